#pragma once

// Constructions that take an N-fragile represented matroid down to a pair of
// matroids related by relaxing a circuit-hyperplane.  Each construction
// checks its own postconditions with the brute-force oracles from
// fragility.hpp and matroid.hpp and throws PostconditionViolation when one
// fails.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "matfrag/fragility.hpp"

namespace matfrag {

struct ZeroOutResult {
  ReprMatroid matroid;     // M' = M([I, A'])
  LabeledMatrix matrix;    // A' with the block A[E(N)] zeroed
  LabelSet display_basis;  // basis B of M displaying N
  LabelSet minor_basis;    // B ∩ E(N), the basis of N that M' isolates
};

// Zeroes the displayed block of N in the standard representation of M with
// respect to the least displaying basis.  Throws NotFragile unless M is
// N-fragile.
ZeroOutResult zero_out(const ReprMatroid& M, const ReprMatroid& N);

// First S ⊆ E(extended) - e (size-then-lexicographic order) violating the
// free-addition condition "e ∈ cl(S) implies X ⊆ cl(S)"; also reports X
// itself when X fails to span e.  nullopt means e was added freely to cl(X).
std::optional<LabelSet> free_addition_violation(const ReprMatroid& extended, const Label& e,
                                                const LabelSet& X);

// [A, b] over a degree-`degree` extension (default max(|X|, 1)) with
// b = sum_v alpha_v A_v for the power basis alpha of the extension.
// Labels in X may be rows (unit columns of [I, A]) or columns.
LabeledMatrix free_extension(const LabeledMatrix& A, const LabelSet& X, const Label& e,
                             unsigned degree = 0, const FieldLimits& limits = {});

// Adds d freely to the flat spanned by X2 and deletes X2.  Requires M to be
// iso(X1, X1 ∪ X2)-fragile; the result is iso(X1, X1 ∪ {d})-fragile.
ReprMatroid collapse_side(const ReprMatroid& M, const LabelSet& X1, const LabelSet& X2,
                          const Label& d, unsigned degree = 0, const FieldLimits& limits = {});

// Degree of f over base; base must be a subfield of f.
unsigned relative_degree(const Field& f, const Field& base);

// Least divisor of align_to that is at least max(1, size); max(1, size) when
// align_to is 0 or no such divisor exists.
unsigned side_degree(std::size_t size, unsigned align_to);

struct ReduceOptions {
  // When nonzero, each side uses the least divisor of align_to that is at
  // least the side's size as its extension degree, so the total degree
  // divides align_to^2.  Zero uses max(1, |side|).
  unsigned align_to = 0;
  FieldLimits limits;
};

struct TwoElementReduction {
  ReprMatroid matroid;           // iso({c},{c,d})-fragile
  ReprMatroid after_first_side;  // iso(X1, X1 ∪ {d})-fragile
  unsigned degree_x2 = 1;
  unsigned degree_x1 = 1;
};

// Collapses X2 to d, then (in the dual) X1 to c.  c and d are new labels,
// except that c may be the sole element of X1 and d the sole element of X2,
// in which case that side is left untouched.
TwoElementReduction reduce_to_two(const ReprMatroid& M, const LabelSet& X1, const LabelSet& X2,
                                  const Label& c, const Label& d, const ReduceOptions& options = {});

struct Relaxation {
  ReprMatroid m1;
  ReprMatroid m2;
  LabelSet hyperplane;  // H = (S1 - {c}) ∪ {d}
  Label c;
  Label d;
  FieldElem theta;  // the entry written at (c, d), outside the base field
};

// Requires M / C \ D = iso({c},{c,d}) for the two remaining elements and M
// to be iso({c},{c,d})-fragile.
Relaxation relax_entry(const ReprMatroid& M, const LabelSet& C, const LabelSet& D,
                       const FieldLimits& limits = {});

// Label sets Z ⊆ S1 ∪ S2 with rank(A1[Z]) != rank(A2[Z]).  Both matrices
// must share labels.
std::vector<LabelSet> rank_differences(const LabeledMatrix& A1, const LabeledMatrix& A2);

struct StageRecord {
  std::string name;
  unsigned degree = 1;  // field degree over the input field after the stage
  std::vector<std::pair<std::string, ReprMatroid>> matroids;
  std::vector<std::pair<std::string, bool>> verdicts;
  double millis = 0;
};

struct ReductionTrace {
  ReductionTrace(ReprMatroid in, ReprMatroid n) : input(std::move(in)), minor(std::move(n)) {}

  ReprMatroid input;
  ReprMatroid minor;
  unsigned k = 0;
  LabelSet display_basis;
  LabelSet minor_basis;
  Label c;
  Label d;
  LabelSet hyperplane;
  std::optional<ReprMatroid> m1;
  std::optional<ReprMatroid> m2;
  unsigned final_degree = 1;
  bool conformance = false;
  std::vector<StageRecord> stages;

  bool all_verdicts() const;
};

struct PipelineOptions {
  // Embed M1 and M2 into the extension of degree exactly 2k^2.
  bool conformance = false;
  FieldLimits limits;
};

ReductionTrace pipeline(const ReprMatroid& M, const ReprMatroid& N, const PipelineOptions& options = {});

// A label not in `taken`: `base` itself, else base_1, base_2, ...
Label fresh_label(const std::string& base, const LabelSet& taken);

}  // namespace matfrag
