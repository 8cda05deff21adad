#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "matfrag/fmatrix.hpp"

namespace matfrag {

// Subsets of a ground set, bit i standing for the i-th label in sorted order.
using Mask = std::uint32_t;

inline constexpr std::size_t kDefaultMaxGround = 16;

// The matroid M([I,A]) of a standard representation A: rows form the basis
// B = S1, row label v stands for the unit column e_v, column label v for A's
// column v.
class ReprMatroid {
 public:
  explicit ReprMatroid(LabeledMatrix rep);

  const LabeledMatrix& rep() const { return rep_; }
  const Field& field() const { return rep_.field(); }

  // Ground set E = S1 ∪ S2 in lexicographic order.
  const std::vector<Label>& ground() const { return ground_; }
  LabelSet ground_set() const { return {ground_.begin(), ground_.end()}; }
  LabelSet basis() const { return rep_.row_set(); }
  std::size_t size() const { return ground_.size(); }
  std::size_t rank() const { return rep_.row_count(); }
  Mask full_mask() const { return size() == 32 ? ~Mask{0} : (Mask{1} << size()) - 1; }

  Mask mask_of(const LabelSet& X) const;  // throws UnknownLabel
  Mask mask_of(const Label& x) const { return mask_of(LabelSet{x}); }
  LabelSet labels_of(Mask m) const;

  // r(X) = |X ∩ B| + rank A[B - X, X - B].
  std::size_t rank_of(Mask X) const;

 private:
  LabeledMatrix rep_;
  std::vector<Label> ground_;
  Mask row_bits_ = 0;                 // ground positions that are rows
  std::vector<std::uint8_t> index_;   // row or column index per ground position
};

struct MinorSpec {
  LabelSet contract;  // C
  LabelSet remove;    // D

  bool operator==(const MinorSpec&) const = default;
  auto operator<=>(const MinorSpec&) const = default;
};

std::size_t rank_set(const ReprMatroid& M, const LabelSet& X);

// All 2^|E| ranks, indexed by mask.
std::vector<std::uint8_t> rank_table(const ReprMatroid& M, std::size_t max_ground = kDefaultMaxGround);

// Pivot on the nonzero entry (row, col): col joins the basis, row leaves.
ReprMatroid pivot(const ReprMatroid& M, const Label& row, const Label& col);

// Standard representation with respect to another basis B of M.
ReprMatroid with_basis(const ReprMatroid& M, const LabelSet& B);

// M / C \ D, normalised by pivoting in lexicographic label order.
ReprMatroid minor(const ReprMatroid& M, const MinorSpec& spec);

ReprMatroid deletion(const ReprMatroid& M, const LabelSet& D);
ReprMatroid contraction(const ReprMatroid& M, const LabelSet& C);

// Standard representation -A^T with rows S2 and columns S1.
ReprMatroid dual(const ReprMatroid& M);

// iso(B, E): coloops B, loops E - B.  The field only matters for later
// pivots and lifts.
ReprMatroid isolated(const LabelSet& B, const LabelSet& E, const Field& field = make_prime_field(2));

// Same ground set and same rank on every subset; representations and fields
// may differ.  Throws CapExceeded above max_ground elements.
bool equals(const ReprMatroid& M1, const ReprMatroid& M2, std::size_t max_ground = kDefaultMaxGround);

std::set<LabelSet> bases(const ReprMatroid& M);
std::vector<Mask> basis_masks(const ReprMatroid& M);
LabelSet closure(const ReprMatroid& M, const LabelSet& X);
Mask closure(const ReprMatroid& M, Mask X);
bool is_circuit(const ReprMatroid& M, const LabelSet& X);
bool is_circuit(const ReprMatroid& M, Mask X);
bool is_flat(const ReprMatroid& M, Mask X);
bool is_circuit_hyperplane(const ReprMatroid& M, const LabelSet& H);

// True iff H is a circuit-hyperplane of M1 and bases(M2) = bases(M1) ∪ {H}.
// Throws GroundSetMismatch when the ground sets differ.
bool is_relaxation(const ReprMatroid& M1, const ReprMatroid& M2, const LabelSet& H);

// Subsets of `universe` ordered by size, then lexicographically by their
// element positions.
std::vector<Mask> subsets_by_size(Mask universe);

}  // namespace matfrag
