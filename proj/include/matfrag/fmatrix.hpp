#pragma once

#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "matfrag/galois.hpp"

namespace matfrag {

using Label = std::string;
using LabelSet = std::set<Label>;

// A matrix over a finite field whose rows and columns are indexed by two
// disjoint sets of labels.  Labels are kept in lexicographic order on each
// side; the constructor permutes entries accordingly.
class LabeledMatrix {
 public:
  // `entries` is row-major in the order of `rows` and `cols` as given.
  LabeledMatrix(Field field, std::vector<Label> rows, std::vector<Label> cols,
                std::vector<Code> entries);

  static LabeledMatrix zeros(Field field, const LabelSet& rows, const LabelSet& cols);

  const Field& field() const { return field_; }
  const std::vector<Label>& rows() const { return rows_; }
  const std::vector<Label>& cols() const { return cols_; }
  std::size_t row_count() const { return rows_.size(); }
  std::size_t col_count() const { return cols_.size(); }
  LabelSet row_set() const { return {rows_.begin(), rows_.end()}; }
  LabelSet col_set() const { return {cols_.begin(), cols_.end()}; }
  LabelSet labels() const;

  Code at(std::size_t i, std::size_t j) const { return entries_[i * cols_.size() + j]; }
  Code at(const Label& row, const Label& col) const;
  FieldElem entry(const Label& row, const Label& col) const { return {field_, at(row, col)}; }
  std::span<const Code> data() const { return entries_; }

  std::optional<std::size_t> row_index(const Label& l) const;
  std::optional<std::size_t> col_index(const Label& l) const;

  bool is_zero() const;

  bool operator==(const LabeledMatrix& other) const {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           entries_ == other.entries_;
  }

 private:
  Field field_;
  std::vector<Label> rows_;
  std::vector<Label> cols_;
  std::vector<Code> entries_;
};

// A[X] = A[X ∩ S1, X ∩ S2].  Throws UnknownLabel for labels outside S1 ∪ S2.
LabeledMatrix submatrix(const LabeledMatrix& A, const LabelSet& X);

std::size_t rank(const LabeledMatrix& A);

LabeledMatrix transpose(const LabeledMatrix& A);

// Entrywise scalar multiple (used for -A^T in duals).
LabeledMatrix negate(const LabeledMatrix& A);

LabeledMatrix lift(const LabeledMatrix& A, const Field& target);

LabeledMatrix set_entry(const LabeledMatrix& A, const Label& row, const Label& col,
                        const FieldElem& value);

// Rank of the block selected by row and column index lists.  Elimination
// scans columns in the given order and takes the first nonzero pivot row.
std::size_t block_rank(const LabeledMatrix& A, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols);

// Same, for blocks given as bitmasks over row and column indices.
std::size_t block_rank(const LabeledMatrix& A, std::uint32_t row_mask, std::uint32_t col_mask);

// In-place rank of a dense row-major buffer over F.
std::size_t dense_rank(const Field& F, std::vector<Code>& m, std::size_t rows, std::size_t cols);

}  // namespace matfrag
