#include "matfrag/fragility.hpp"

#include <algorithm>
#include <bit>

namespace matfrag {

namespace {

constexpr std::size_t kTableCap = 24;

// Rank data for comparing minors of M against a fixed N by the formula
// r_{M/C\D}(Y) = r_M(Y ∪ C) - r_M(C).
struct MinorMatcher {
  std::vector<std::uint8_t> rank_m;
  std::vector<std::uint8_t> rank_n;  // indexed by N-masks
  std::vector<Mask> n_to_m;          // N-mask -> M-mask
  Mask n_in_m = 0;

  MinorMatcher(const ReprMatroid& M, const ReprMatroid& N, std::size_t max_free) {
    if (N.size() > M.size())
      throw Error(ErrorKind::GroundSetMismatch, "E(N) is larger than E(M)");
    n_in_m = 0;
    std::vector<Mask> bit(N.size());
    const LabelSet E = M.ground_set();
    for (std::size_t g = 0; g < N.size(); ++g) {
      if (!E.contains(N.ground()[g]))
        throw Error(ErrorKind::GroundSetMismatch, "'" + N.ground()[g] + "' is in E(N) but not in E(M)");
      bit[g] = M.mask_of(N.ground()[g]);
      n_in_m |= bit[g];
    }
    if (M.size() - N.size() > max_free)
      throw Error(ErrorKind::CapExceeded, std::to_string(M.size() - N.size()) +
                                              " elements outside E(N) exceeds the cap " +
                                              std::to_string(max_free));
    rank_m = rank_table(M, kTableCap);
    rank_n = rank_table(N, kTableCap);
    n_to_m.resize(rank_n.size());
    for (Mask y = 0; y < n_to_m.size(); ++y) {
      Mask m = 0;
      for (std::size_t g = 0; g < N.size(); ++g)
        if (y >> g & 1u) m |= bit[g];
      n_to_m[y] = m;
    }
  }

  bool realises(Mask contract) const {
    const int base = rank_m[contract];
    for (Mask y = 0; y < n_to_m.size(); ++y)
      if (rank_m[n_to_m[y] | contract] - base != rank_n[y]) return false;
    return true;
  }
};

MinorSpec spec_of(const ReprMatroid& M, Mask free, Mask contract) {
  return {M.labels_of(contract), M.labels_of(free & ~contract)};
}

}  // namespace

std::vector<MinorSpec> fragile_partitions(const ReprMatroid& M, const ReprMatroid& N, std::size_t max_free) {
  const MinorMatcher match(M, N, max_free);
  const Mask free = M.full_mask() & ~match.n_in_m;
  std::vector<MinorSpec> out;
  for (Mask C : subsets_by_size(free))
    if (match.realises(C)) out.push_back(spec_of(M, free, C));
  return out;
}

bool is_minor(const ReprMatroid& M, const ReprMatroid& N, std::size_t max_free) {
  const MinorMatcher match(M, N, max_free);
  const Mask free = M.full_mask() & ~match.n_in_m;
  for (Mask C = free;; C = (C - 1) & free) {
    if (match.realises(C)) return true;
    if (C == 0) return false;
  }
}

bool is_N_fragile(const ReprMatroid& M, const ReprMatroid& N, std::size_t max_free) {
  const MinorMatcher match(M, N, max_free);
  const Mask free = M.full_mask() & ~match.n_in_m;
  int found = 0;
  for (Mask C = free;; C = (C - 1) & free) {
    if (match.realises(C) && ++found > 1) return false;
    if (C == 0) break;
  }
  return found == 1;
}

XFragileVerdict check_X_fragile_matrix(const LabeledMatrix& A, const LabelSet& X, std::size_t max_free) {
  const ReprMatroid index(A);  // only used for label <-> position bookkeeping
  const Mask xm = index.mask_of(X);

  // Split a ground mask into row and column index masks.
  std::vector<Mask> row_bit(index.size(), 0), col_bit(index.size(), 0);
  for (std::size_t g = 0; g < index.size(); ++g) {
    const Label& l = index.ground()[g];
    if (auto i = A.row_index(l))
      row_bit[g] = Mask{1} << *i;
    else
      col_bit[g] = Mask{1} << *A.col_index(l);
  }
  auto block = [&](Mask m) {
    Mask rm = 0, cm = 0;
    for (std::size_t g = 0; g < index.size(); ++g)
      if (m >> g & 1u) {
        rm |= row_bit[g];
        cm |= col_bit[g];
      }
    return block_rank(A, rm, cm);
  };

  XFragileVerdict v;
  if (block(xm) != 0) {
    v.failure = "zero-block";
    return v;
  }
  const Mask rest = index.full_mask() & ~xm;
  if (static_cast<std::size_t>(std::popcount(rest)) > max_free)
    throw Error(ErrorKind::CapExceeded, "too many labels outside X for exhaustive checking");
  for (Mask Y : subsets_by_size(rest)) {
    if (Y == 0) continue;
    if (block(xm | Y) <= block(Y)) {
      v.failure = "rank";
      v.witness = index.labels_of(Y);
      return v;
    }
  }
  v.fragile = true;
  return v;
}

std::optional<LabelSet> display_basis(const ReprMatroid& M, const ReprMatroid& N) {
  const MinorMatcher match(M, N, 31);
  const Mask current = M.mask_of(M.basis());
  if (match.realises(current & ~match.n_in_m)) return M.basis();
  auto masks = basis_masks(M);
  auto positions = [](Mask m) {
    std::vector<int> p;
    for (int g = 0; g < 32; ++g)
      if (m >> g & 1u) p.push_back(g);
    return p;
  };
  std::sort(masks.begin(), masks.end(), [&](Mask a, Mask b) { return positions(a) < positions(b); });
  for (Mask B : masks)
    if (match.realises(B & ~match.n_in_m)) return M.labels_of(B);
  return std::nullopt;
}

}  // namespace matfrag
