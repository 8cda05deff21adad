#include "doctest.h"
#include "matfrag/generate.hpp"
#include "matfrag/reductions.hpp"
#include "oracles.hpp"

using namespace matfrag;

namespace {

const Field F2 = make_prime_field(2);
const Field F3 = make_prime_field(3);
const Field F4 = extend_field(F2, 2);

ReprMatroid c_de(Code d, Code e) { return ReprMatroid(LabeledMatrix(F2, {"c"}, {"d", "e"}, {d, e})); }

LabelSet minus(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  for (const auto& x : a)
    if (!b.contains(x)) out.insert(x);
  return out;
}

// Accepted (M, N) pairs from the generator.
std::vector<std::pair<ReprMatroid, ReprMatroid>> fragile_pairs(unsigned q, unsigned max_n, unsigned max_minor,
                                                               std::size_t count, std::uint64_t seed) {
  std::vector<std::pair<ReprMatroid, ReprMatroid>> out;
  std::mt19937_64 rng(seed);
  while (out.size() < count) {
    GenParams p;
    p.q = q;
    const unsigned n = 2 + rng() % (max_n - 1);
    p.rows = 1 + rng() % (n - 1);
    p.cols = n - p.rows;
    p.minor_size = 1 + rng() % std::min(max_minor, n);
    p.seed = rng();
    p.max_attempts = 2000;
    try {
      const Generated g = gen_random(GenKind::NFragile, p);
      out.emplace_back(g.instance.matroid, *g.instance.task->minor);
    } catch (const Error&) {
    }
  }
  return out;
}

}  // namespace

TEST_CASE("zero_out on a displayed, already zero block") {
  const ReprMatroid M = c_de(0, 1);
  const ZeroOutResult z = zero_out(M, isolated({"c"}, {"c", "d"}));
  CHECK(z.display_basis == LabelSet{"c"});
  CHECK(z.minor_basis == LabelSet{"c"});
  CHECK(z.matrix == M.rep());
  CHECK(equals(z.matroid, M));
  CHECK_THROWS_WITH_AS(zero_out(c_de(1, 1), isolated({"c"}, {"c", "d"})), doctest::Contains("NotFragile"), Error);
}

TEST_CASE("zero_out on generated pairs") {
  for (const auto& [M, N] : fragile_pairs(2, 6, 2, 40, 101)) {
    const ZeroOutResult z = zero_out(M, N);
    const LabelSet EN = N.ground_set();
    CHECK(oracle::x_fragile(z.matrix, EN));
    CHECK(is_N_fragile(z.matroid, isolated(z.minor_basis, EN, z.matroid.field())));
    CHECK(equals(contraction(z.matroid, z.minor_basis), contraction(M, z.minor_basis)));
    CHECK(equals(minor(z.matroid, {z.minor_basis, minus(EN, z.minor_basis)}),
                 minor(M, {z.minor_basis, minus(EN, z.minor_basis)})));
  }
}

TEST_CASE("free_extension of two unit columns") {
  const LabeledMatrix A(F2, {"r1", "r2"}, {"a", "b"}, {1, 0, 0, 1});
  const LabeledMatrix X = free_extension(A, {"a", "b"}, "e");
  CHECK(X.field() == F4);
  CHECK(X.at("r1", "e") == 1);
  CHECK(X.at("r2", "e") == 2);  // omega
  CHECK(X.at("r1", "a") == 1);
  CHECK_FALSE(free_addition_violation(ReprMatroid(X), "e", {"a", "b"}));
}

TEST_CASE("free_extension degenerate sides") {
  const LabeledMatrix A(F3, {"r1", "r2"}, {"a", "b"}, {1, 2, 2, 0});
  const LabeledMatrix L = free_extension(A, {}, "e");
  CHECK(L.field() == F3);
  CHECK(rank_set(ReprMatroid(L), {"e"}) == 0);
  const LabeledMatrix P = free_extension(A, {"a"}, "e");
  CHECK(P.field() == F3);
  CHECK(P.at("r1", "e") == 1);
  CHECK(P.at("r2", "e") == 2);
  CHECK(rank_set(ReprMatroid(P), {"a", "e"}) == 1);
  CHECK_THROWS_WITH_AS(free_extension(A, {"a"}, "b"), doctest::Contains("LabelCollision"), Error);
  CHECK_THROWS_WITH_AS(free_extension(A, {"z"}, "e"), doctest::Contains("UnknownLabel"), Error);
  CHECK_THROWS_WITH_AS(free_extension(A, {"a", "b"}, "e", 20), doctest::Contains("DegreeCap"), Error);
}

TEST_CASE("free_extension satisfies the flat condition") {
  std::mt19937_64 rng(61);
  for (int t = 0; t < 40; ++t) {
    const Field& F = t % 2 ? F3 : F2;
    const LabeledMatrix A = oracle::random_matrix(rng, F, 1 + rng() % 3, 1 + rng() % 3);
    LabelSet X;
    for (const auto& c : A.cols())
      if (rng() % 2) X.insert(c);
    const ReprMatroid before(A), after(free_extension(A, X, "e"));
    CHECK(relative_degree(after.field(), F) == std::max<std::size_t>(1, X.size()));
    // Every flat of the original matroid that spans e contains X.
    for (const auto& S : oracle::all_subsets(before.ground_set())) {
      if (closure(before, S) != S) continue;
      LabelSet Se = S;
      Se.insert("e");
      if (oracle::rank(after.rep(), Se) == oracle::rank(after.rep(), S))
        for (const auto& x : X) CHECK(S.contains(x));
    }
    // e lies in the span of X.
    LabelSet Xe = X;
    Xe.insert("e");
    CHECK(oracle::rank(after.rep(), Xe) == oracle::rank(after.rep(), X));
    CHECK(equals(deletion(after, {"e"}), ReprMatroid(lift(A, after.field()))));
  }
}

TEST_CASE("collapse_side") {
  // |X2| = 1 renames the element.
  const ReprMatroid M = c_de(0, 1);
  const ReprMatroid R = collapse_side(M, {"c"}, {"d"}, "x");
  CHECK(R.field() == F2);
  CHECK(R.ground_set() == LabelSet{"c", "e", "x"});
  CHECK(equals(R, ReprMatroid(LabeledMatrix(F2, {"c"}, {"x", "e"}, {0, 1}))));

  // |X2| = 0 adds a loop.
  const ReprMatroid L = collapse_side(ReprMatroid(LabeledMatrix(F2, {"c"}, {"e"}, {1})), {"c"}, {}, "x");
  CHECK(rank_set(L, {"x"}) == 0);

  // |X2| = 2 over GF(2) needs GF(4).
  const ReprMatroid M2(LabeledMatrix(F2, {"c", "f"}, {"d", "g", "h"}, {0, 0, 1, 1, 1, 0}));
  REQUIRE(is_N_fragile(M2, isolated({"c"}, {"c", "d", "g"})));
  const ReprMatroid C2 = collapse_side(M2, {"c"}, {"d", "g"}, "x");
  CHECK(C2.field().order() == 4);
  CHECK(oracle::fragile_partitions(C2.rep(), isolated({"c"}, {"c", "x"}, C2.field()).rep()).size() == 1);

  CHECK_THROWS_WITH_AS(collapse_side(c_de(1, 1), {"c"}, {"d"}, "x"), doctest::Contains("NotFragile"), Error);
  CHECK_THROWS_WITH_AS(collapse_side(M, {"c"}, {"d"}, "e"), doctest::Contains("LabelCollision"), Error);
}

TEST_CASE("reduce_to_two") {
  const ReprMatroid M = c_de(0, 1);
  const TwoElementReduction same = reduce_to_two(M, {"c"}, {"d"}, "c", "d");
  CHECK(same.matroid.field() == F2);
  CHECK(equals(same.matroid, M));
  const TwoElementReduction renamed = reduce_to_two(M, {"c"}, {"d"}, "x", "y");
  CHECK(renamed.matroid.field() == F2);
  CHECK(renamed.matroid.ground_set() == LabelSet{"e", "x", "y"});
  CHECK_THROWS_WITH_AS(reduce_to_two(M, {"c"}, {"d"}, "e", "y"), doctest::Contains("LabelCollision"), Error);

  // |X1| = 1, |X2| = 2 over GF(2).
  const ReprMatroid M2(LabeledMatrix(F2, {"c", "f"}, {"d", "g", "h"}, {0, 0, 1, 1, 1, 0}));
  const TwoElementReduction r = reduce_to_two(M2, {"c"}, {"d", "g"}, "x", "y");
  CHECK(r.matroid.field().order() == 4);
  CHECK(r.degree_x2 == 2);
  CHECK(r.degree_x1 == 1);
  CHECK(equals(minor(r.matroid, {{"x"}, {"y"}}), minor(M2, {{"c"}, {"d", "g"}})));
  CHECK(oracle::fragile_partitions(r.matroid.rep(), isolated({"x"}, {"x", "y"}, r.matroid.field()).rep()).size() ==
        1);
}

TEST_CASE("reduce_to_two with two elements on each side") {
  // 2x2 zero block on X = {c1, c2, d1, d2}; search for a fragile instance.
  GenParams p;
  p.rows = 3;
  p.cols = 3;
  p.x_rows = 2;
  p.x_cols = 2;
  p.seed = 5;
  const Generated g = gen_random(GenKind::XFragile, p);
  const ReprMatroid& M = g.instance.matroid;
  const TwoElementReduction r = reduce_to_two(M, {"r1", "r2"}, {"s1", "s2"}, "x", "y");
  CHECK(relative_degree(r.matroid.field(), F2) == 4);
  CHECK(equals(minor(r.matroid, {{"x"}, {"y"}}), minor(M, {{"r1", "r2"}, {"s1", "s2"}})));
}

TEST_CASE("side degrees divide the bound") {
  for (unsigned k = 1; k <= 4; ++k)
    for (unsigned s = 0; s <= k; ++s) {
      const unsigned d1 = side_degree(s, k), d2 = side_degree(k - s, k);
      CHECK(d1 >= std::max(1u, s));
      CHECK(d2 >= std::max(1u, k - s));
      CHECK((2 * k * k) % (2 * d1 * d2) == 0);
    }
  CHECK(side_degree(3, 0) == 3);
  CHECK(side_degree(0, 0) == 1);
}

TEST_CASE("relax_entry on [0 1]") {
  const ReprMatroid M = c_de(0, 1);
  const Relaxation rel = relax_entry(M, {}, {"e"});
  CHECK(rel.c == "c");
  CHECK(rel.d == "d");
  CHECK(rel.hyperplane == LabelSet{"d"});
  CHECK(rel.theta.code() == 2);
  CHECK(rel.m2.rep() == LabeledMatrix(F4, {"c"}, {"d", "e"}, {2, 1}));
  CHECK(bases(rel.m1) == std::set<LabelSet>{{"c"}, {"e"}});
  CHECK(bases(rel.m2) == std::set<LabelSet>{{"c"}, {"d"}, {"e"}});
  CHECK_THROWS_WITH_AS(relax_entry(c_de(1, 1), {}, {"e"}), doctest::Contains("NotFragile"), Error);
}

TEST_CASE("relax_entry on a 2x2 anti-diagonal matrix") {
  const LabeledMatrix A1(F2, {"c", "f"}, {"d", "g"}, {0, 1, 1, 0});
  REQUIRE(oracle::x_fragile(A1, {"c", "d"}));
  const ReprMatroid M(A1);
  const Relaxation rel = relax_entry(M, {"f"}, {"g"});
  CHECK(rel.hyperplane == LabelSet{"d", "f"});
  CHECK(is_relaxation(rel.m1, rel.m2, rel.hyperplane));
  // Ranks of square blocks differ exactly at Z = {c, d}.
  const LabeledMatrix L = lift(A1, rel.m2.field());
  for (const auto& Z : oracle::all_subsets(A1.labels()))
    CHECK((rank(submatrix(L, Z)) != rank(submatrix(rel.m2.rep(), Z))) == (Z == LabelSet{"c", "d"}));
  CHECK(rank_differences(L, rel.m2.rep()) == std::vector<LabelSet>{{"c", "d"}});
}

TEST_CASE("relaxation changes exactly one rank") {
  std::mt19937_64 rng(73);
  for (int t = 0; t < 20; ++t) {
    GenParams p;
    p.q = t % 2 ? 3 : 2;
    p.rows = 1 + rng() % 3;
    p.cols = 1 + rng() % 3;
    p.seed = rng();
    const Generated g = gen_random(GenKind::XFragile, p);
    const ReprMatroid& M = g.instance.matroid;
    const Relaxation rel = relax_entry(M, minus(M.basis(), {"r1"}), minus(M.rep().col_set(), {"s1"}));
    for (const auto& X : oracle::all_subsets(M.ground_set())) {
      const std::size_t r1 = oracle::rank(rel.m1.rep(), X), r2 = oracle::rank(rel.m2.rep(), X);
      if (X == rel.hyperplane)
        CHECK(r2 == r1 + 1);
      else
        CHECK(r2 == r1);
    }
  }
}

TEST_CASE("pipeline on [0 1]") {
  const ReductionTrace t = pipeline(c_de(0, 1), isolated({"c"}, {"c", "d"}));
  CHECK(t.c == "c");
  CHECK(t.d == "d");
  CHECK(t.hyperplane == LabelSet{"d"});
  CHECK(t.final_degree == 2);
  CHECK(t.all_verdicts());
  REQUIRE(t.m2);
  CHECK(t.m2->rep() == LabeledMatrix(F4, {"c"}, {"d", "e"}, {2, 1}));
  CHECK_THROWS_WITH_AS(pipeline(c_de(1, 1), isolated({"c"}, {"c", "d"})), doctest::Contains("NotFragile"), Error);
}

TEST_CASE("pipeline with a U(1,2) minor") {
  for (const auto& [M, N] : fragile_pairs(2, 6, 2, 20, 103)) {
    if (N.size() != 2) continue;
    const ReductionTrace t = pipeline(M, N);
    CHECK(t.all_verdicts());
    CHECK(8 % t.final_degree == 0);
    const LabelSet X2 = minus(N.ground_set(), t.minor_basis);
    CHECK(equals(minor(M, {t.minor_basis, X2}), minor(*t.m1, {{t.c}, {t.d}})));
    CHECK(is_relaxation(*t.m1, *t.m2, t.hyperplane));
    // Degrees never decrease along the chain.
    unsigned prev = 1;
    for (const auto& s : t.stages) {
      CHECK(s.degree >= prev);
      prev = s.degree;
    }
    const ReductionTrace c = pipeline(M, N, {true, {}});
    CHECK(relative_degree(c.m2->field(), F2) == 8);
  }
}
