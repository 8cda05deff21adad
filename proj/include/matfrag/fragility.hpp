#pragma once

#include <optional>
#include <string>
#include <vector>

#include "matfrag/matroid.hpp"

namespace matfrag {

// Exhaustive caps.  Every predicate here is brute force over subsets.
inline constexpr std::size_t kMaxFreeElements = 12;

// Every partition (C, D) of E(M) - E(N) with M / C \ D = N, in enumeration
// order (|C| ascending, then lexicographic).  GroundSetMismatch unless
// E(N) ⊆ E(M).
std::vector<MinorSpec> fragile_partitions(const ReprMatroid& M, const ReprMatroid& N,
                                          std::size_t max_free = kMaxFreeElements);

bool is_minor(const ReprMatroid& M, const ReprMatroid& N, std::size_t max_free = kMaxFreeElements);

// Exactly one partition realises N.
bool is_N_fragile(const ReprMatroid& M, const ReprMatroid& N, std::size_t max_free = kMaxFreeElements);

struct XFragileVerdict {
  bool fragile = false;
  // "" when fragile; otherwise "zero-block" (A[X] has a nonzero entry) or
  // "rank" (some Y violates rank(A[X∪Y]) > rank(A[Y])).
  std::string failure;
  // First violating Y in size-then-lexicographic order, for "rank" failures.
  std::optional<LabelSet> witness;
};

XFragileVerdict check_X_fragile_matrix(const LabeledMatrix& A, const LabelSet& X,
                                       std::size_t max_free = kMaxFreeElements);

inline bool is_X_fragile_matrix(const LabeledMatrix& A, const LabelSet& X,
                                std::size_t max_free = kMaxFreeElements) {
  return check_X_fragile_matrix(A, X, max_free).fragile;
}

// A basis B of M with M[E(N), B] = N: the displayed row set if it works,
// otherwise the lexicographically least such basis.  That is,
// M / (B - E(N)) \ (E(M) - (B ∪ E(N))) = N; nullopt iff N is not a minor.
std::optional<LabelSet> display_basis(const ReprMatroid& M, const ReprMatroid& N);

}  // namespace matfrag
