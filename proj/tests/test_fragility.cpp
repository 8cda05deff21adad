#include "doctest.h"
#include "matfrag/fragility.hpp"
#include "oracles.hpp"

using namespace matfrag;

namespace {

const Field F2 = make_prime_field(2);
const Field F3 = make_prime_field(3);

ReprMatroid c_de(Code d, Code e) { return ReprMatroid(LabeledMatrix(F2, {"c"}, {"d", "e"}, {d, e})); }
const ReprMatroid iso_c_cd = isolated({"c"}, {"c", "d"});

LabelSet minus(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  for (const auto& x : a)
    if (!b.contains(x)) out.insert(x);
  return out;
}

LabelSet join(LabelSet a, const LabelSet& b) {
  a.insert(b.begin(), b.end());
  return a;
}

// A random matroid with |E| <= 7 and a minor N of it on a random subset,
// either a genuine minor or a displayed submatrix.
std::pair<ReprMatroid, ReprMatroid> random_pair(std::mt19937_64& rng) {
  const Field& F = rng() % 2 ? F2 : F3;
  const unsigned n = 2 + rng() % 6;
  const unsigned r = rng() % (n + 1);
  const ReprMatroid M(oracle::random_matrix(rng, F, r, n - r));
  MinorSpec spec;
  for (const auto& l : M.ground()) {
    const auto roll = rng() % 3;
    if (roll == 1) spec.contract.insert(l);
    if (roll == 2) spec.remove.insert(l);
  }
  ReprMatroid N = minor(M, spec);
  if (rng() % 2) N = ReprMatroid(submatrix(M.rep(), N.ground_set()));
  return {M, N};
}

}  // namespace

TEST_CASE("fragile partitions of small examples") {
  const auto p = fragile_partitions(c_de(0, 1), iso_c_cd);
  REQUIRE(p.size() == 1);
  CHECK(p[0] == MinorSpec{{}, {"e"}});
  CHECK(fragile_partitions(iso_c_cd, iso_c_cd) == std::vector<MinorSpec>{MinorSpec{}});
  CHECK(fragile_partitions(c_de(1, 1), iso_c_cd).empty());
  CHECK_THROWS_WITH_AS(fragile_partitions(iso_c_cd, c_de(0, 1)), doctest::Contains("GroundSetMismatch"), Error);
  CHECK_THROWS_AS(fragile_partitions(c_de(0, 1), isolated({"x"}, {"x"})), Error);
}

TEST_CASE("N-fragility of small examples") {
  CHECK(is_N_fragile(c_de(0, 1), iso_c_cd));
  CHECK_FALSE(is_N_fragile(c_de(1, 1), iso_c_cd));
  CHECK_FALSE(is_N_fragile(isolated({"c"}, {"c", "d", "e"}), iso_c_cd));
  CHECK(fragile_partitions(isolated({"c"}, {"c", "d", "e"}), iso_c_cd).size() == 2);
  CHECK(is_minor(c_de(0, 1), iso_c_cd));
  CHECK_FALSE(is_minor(c_de(1, 1), iso_c_cd));
}

TEST_CASE("X-fragile matrices") {
  const LabeledMatrix A01 = c_de(0, 1).rep();
  CHECK(is_X_fragile_matrix(A01, {"c", "d"}));
  const auto v = check_X_fragile_matrix(c_de(0, 0).rep(), {"c", "d"});
  CHECK_FALSE(v.fragile);
  CHECK(v.failure == "rank");
  REQUIRE(v.witness);
  CHECK(*v.witness == LabelSet{"e"});
  const auto z = check_X_fragile_matrix(c_de(1, 1).rep(), {"c", "d"});
  CHECK_FALSE(z.fragile);
  CHECK(z.failure == "zero-block");
  CHECK_FALSE(z.witness);
}

TEST_CASE("display bases") {
  CHECK(display_basis(c_de(0, 1), iso_c_cd) == LabelSet{"c"});
  CHECK(display_basis(iso_c_cd, iso_c_cd) == LabelSet{"c"});
  const ReprMatroid N(LabeledMatrix(F3, {"b", "a"}, {"x"}, {1, 2}));
  CHECK(display_basis(N, N) == LabelSet{"a", "b"});
  CHECK_FALSE(display_basis(c_de(1, 1), iso_c_cd));
}

TEST_CASE("partitions and X-fragility agree with the reference enumeration") {
  std::mt19937_64 rng(41);
  for (int t = 0; t < 150; ++t) {
    const auto [M, N] = random_pair(rng);
    const auto got = fragile_partitions(M, N);
    auto expected = oracle::fragile_partitions(M.rep(), N.rep());
    std::set<MinorSpec> a(got.begin(), got.end()), b(expected.begin(), expected.end());
    CHECK(a == b);
    CHECK(is_N_fragile(M, N) == (expected.size() == 1));
    CHECK(is_minor(M, N) == !expected.empty());
    CHECK(display_basis(M, N).has_value() == !expected.empty());
    if (const auto B = display_basis(M, N)) {
      CHECK(oracle::rank(M.rep(), *B) == M.rank());
      CHECK(B->size() == M.rank());
      CHECK(equals(minor(M, {minus(*B, N.ground_set()), minus(M.ground_set(), join(*B, N.ground_set()))}), N));
    }
  }
}

TEST_CASE("single-element definition of fragility") {
  // N-fragile iff N is a minor and no e outside E(N) can be both deleted and
  // contracted while keeping N.
  std::mt19937_64 rng(43);
  int fragile = 0;
  for (int t = 0; t < 150; ++t) {
    const auto [M, N] = random_pair(rng);
    bool both = false;
    for (const auto& e : minus(M.ground_set(), N.ground_set()))
      both = both || (is_minor(deletion(M, {e}), N) && is_minor(contraction(M, {e}), N));
    const bool alt = is_minor(M, N) && !both;
    CHECK(is_N_fragile(M, N) == alt);
    fragile += alt;
  }
  CHECK(fragile > 10);
}

TEST_CASE("fragility transports through duality") {
  std::mt19937_64 rng(47);
  for (int t = 0; t < 150; ++t) {
    const auto [M, N] = random_pair(rng);
    CHECK(is_N_fragile(M, N) == is_N_fragile(dual(M), dual(N)));
  }
}

TEST_CASE("X-fragile matrices: definition, transpose, converse") {
  std::mt19937_64 rng(53);
  int positives = 0;
  for (int t = 0; t < 300; ++t) {
    const Field& F = rng() % 2 ? F2 : F3;
    const unsigned r = 1 + rng() % 3, c = 1 + rng() % 3;
    LabeledMatrix A = oracle::random_matrix(rng, F, r, c);
    LabelSet X;
    for (const auto& l : A.labels())
      if (rng() % 3 == 0) X.insert(l);
    const std::vector<Label> rows = A.rows(), cols = A.cols();
    for (const auto& i : rows)
      for (const auto& j : cols)
        if (X.contains(i) && X.contains(j)) A = set_entry(A, i, j, F.zero());
    const bool fragile = is_X_fragile_matrix(A, X);
    CHECK(fragile == oracle::x_fragile(A, X));
    CHECK(fragile == is_X_fragile_matrix(transpose(A), X));
    if (fragile) {
      ++positives;
      CHECK(is_N_fragile(ReprMatroid(A), isolated(minus(X, A.col_set()), X, F)));
    }
  }
  CHECK(positives > 20);
}

TEST_CASE("witnesses are the first failing subset") {
  std::mt19937_64 rng(59);
  for (int t = 0; t < 100; ++t) {
    const LabeledMatrix A = oracle::random_matrix(rng, F2, 2, 3);
    const LabelSet X{"r1", "s1"};
    const LabeledMatrix Z = set_entry(A, "r1", "s1", F2.zero());
    const auto v = check_X_fragile_matrix(Z, X);
    if (v.fragile) continue;
    REQUIRE(v.witness);
    // No strictly smaller failing Y exists.
    for (const auto& Y : oracle::all_subsets(minus(Z.labels(), X))) {
      if (Y.empty() || Y.size() >= v.witness->size()) continue;
      LabelSet XY = X;
      XY.insert(Y.begin(), Y.end());
      CHECK(rank(submatrix(Z, XY)) > rank(submatrix(Z, Y)));
    }
  }
}
