#include "matfrag/fmatrix.hpp"

#include <algorithm>
#include <numeric>

namespace matfrag {

namespace {

std::vector<std::size_t> sorted_order(const std::vector<Label>& labels) {
  std::vector<std::size_t> idx(labels.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(), [&](auto a, auto b) { return labels[a] < labels[b]; });
  return idx;
}

}  // namespace

LabeledMatrix::LabeledMatrix(Field field, std::vector<Label> rows, std::vector<Label> cols,
                             std::vector<Code> entries)
    : field_(std::move(field)) {
  if (entries.size() != rows.size() * cols.size())
    throw Error(ErrorKind::InvalidArgs, "entry count does not match the label counts");
  const auto ro = sorted_order(rows);
  const auto co = sorted_order(cols);
  for (std::size_t i = 1; i < ro.size(); ++i)
    if (rows[ro[i]] == rows[ro[i - 1]])
      throw Error(ErrorKind::LabelCollision, "duplicate row label '" + rows[ro[i]] + "'");
  for (std::size_t j = 1; j < co.size(); ++j)
    if (cols[co[j]] == cols[co[j - 1]])
      throw Error(ErrorKind::LabelCollision, "duplicate column label '" + cols[co[j]] + "'");
  rows_.reserve(rows.size());
  cols_.reserve(cols.size());
  for (auto i : ro) rows_.push_back(rows[i]);
  for (auto j : co) cols_.push_back(cols[j]);
  {
    std::vector<Label> common;
    std::set_intersection(rows_.begin(), rows_.end(), cols_.begin(), cols_.end(),
                          std::back_inserter(common));
    if (!common.empty())
      throw Error(ErrorKind::LabelCollision, "label '" + common.front() + "' is both a row and a column");
  }
  entries_.resize(entries.size());
  for (std::size_t i = 0; i < ro.size(); ++i)
    for (std::size_t j = 0; j < co.size(); ++j) {
      const Code c = entries[ro[i] * cols.size() + co[j]];
      if (!field_.contains(c))
        throw Error(ErrorKind::FieldMismatch,
                    "entry " + std::to_string(c) + " is not an element of " + field_.name());
      entries_[i * co.size() + j] = c;
    }
}

LabeledMatrix LabeledMatrix::zeros(Field field, const LabelSet& rows, const LabelSet& cols) {
  return LabeledMatrix(std::move(field), {rows.begin(), rows.end()}, {cols.begin(), cols.end()},
                       std::vector<Code>(rows.size() * cols.size(), 0));
}

LabelSet LabeledMatrix::labels() const {
  LabelSet out(rows_.begin(), rows_.end());
  out.insert(cols_.begin(), cols_.end());
  return out;
}

std::optional<std::size_t> LabeledMatrix::row_index(const Label& l) const {
  auto it = std::lower_bound(rows_.begin(), rows_.end(), l);
  if (it == rows_.end() || *it != l) return std::nullopt;
  return static_cast<std::size_t>(it - rows_.begin());
}

std::optional<std::size_t> LabeledMatrix::col_index(const Label& l) const {
  auto it = std::lower_bound(cols_.begin(), cols_.end(), l);
  if (it == cols_.end() || *it != l) return std::nullopt;
  return static_cast<std::size_t>(it - cols_.begin());
}

Code LabeledMatrix::at(const Label& row, const Label& col) const {
  auto i = row_index(row);
  if (!i) throw Error(ErrorKind::UnknownLabel, "no row '" + row + "'");
  auto j = col_index(col);
  if (!j) throw Error(ErrorKind::UnknownLabel, "no column '" + col + "'");
  return at(*i, *j);
}

bool LabeledMatrix::is_zero() const {
  return std::all_of(entries_.begin(), entries_.end(), [](Code c) { return c == 0; });
}

LabeledMatrix submatrix(const LabeledMatrix& A, const LabelSet& X) {
  std::vector<std::size_t> ri, ci;
  for (const auto& l : X) {
    if (auto i = A.row_index(l)) {
      ri.push_back(*i);
    } else if (auto j = A.col_index(l)) {
      ci.push_back(*j);
    } else {
      throw Error(ErrorKind::UnknownLabel, "label '" + l + "' is not in the matrix");
    }
  }
  std::vector<Label> rows, cols;
  std::vector<Code> entries;
  for (auto i : ri) rows.push_back(A.rows()[i]);
  for (auto j : ci) cols.push_back(A.cols()[j]);
  for (auto i : ri)
    for (auto j : ci) entries.push_back(A.at(i, j));
  return LabeledMatrix(A.field(), std::move(rows), std::move(cols), std::move(entries));
}

std::size_t dense_rank(const Field& F, std::vector<Code>& m, std::size_t rows, std::size_t cols) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv * cols + c] == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = c; j < cols; ++j) std::swap(m[piv * cols + j], m[r * cols + j]);
    const Code pinv = F.inv(m[r * cols + c]);
    for (std::size_t i = r + 1; i < rows; ++i) {
      const Code f = m[i * cols + c];
      if (f == 0) continue;
      const Code factor = F.neg(F.mul(f, pinv));
      for (std::size_t j = c; j < cols; ++j)
        if (m[r * cols + j] != 0) m[i * cols + j] = F.add(m[i * cols + j], F.mul(factor, m[r * cols + j]));
    }
    ++r;
  }
  return r;
}

std::size_t block_rank(const LabeledMatrix& A, std::span<const std::size_t> rows,
                       std::span<const std::size_t> cols) {
  if (rows.empty() || cols.empty()) return 0;
  thread_local std::vector<Code> buf;
  buf.resize(rows.size() * cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < cols.size(); ++j) buf[i * cols.size() + j] = A.at(rows[i], cols[j]);
  return dense_rank(A.field(), buf, rows.size(), cols.size());
}

std::size_t block_rank(const LabeledMatrix& A, std::uint32_t row_mask, std::uint32_t col_mask) {
  std::size_t ri[32], ci[32];
  std::size_t nr = 0, nc = 0;
  for (std::size_t i = 0; i < A.row_count(); ++i)
    if (row_mask >> i & 1u) ri[nr++] = i;
  for (std::size_t j = 0; j < A.col_count(); ++j)
    if (col_mask >> j & 1u) ci[nc++] = j;
  return block_rank(A, std::span<const std::size_t>(ri, nr), std::span<const std::size_t>(ci, nc));
}

std::size_t rank(const LabeledMatrix& A) {
  std::vector<Code> buf(A.data().begin(), A.data().end());
  return dense_rank(A.field(), buf, A.row_count(), A.col_count());
}

LabeledMatrix transpose(const LabeledMatrix& A) {
  std::vector<Code> entries(A.row_count() * A.col_count());
  for (std::size_t i = 0; i < A.row_count(); ++i)
    for (std::size_t j = 0; j < A.col_count(); ++j) entries[j * A.row_count() + i] = A.at(i, j);
  return LabeledMatrix(A.field(), A.cols(), A.rows(), std::move(entries));
}

LabeledMatrix negate(const LabeledMatrix& A) {
  std::vector<Code> entries(A.data().begin(), A.data().end());
  for (auto& c : entries) c = A.field().neg(c);
  return LabeledMatrix(A.field(), A.rows(), A.cols(), std::move(entries));
}

LabeledMatrix lift(const LabeledMatrix& A, const Field& target) {
  if (!A.field().is_subfield_of(target))
    throw Error(ErrorKind::NotASubfield, A.field().name() + " is not a tower prefix of " + target.name());
  return LabeledMatrix(target, A.rows(), A.cols(), {A.data().begin(), A.data().end()});
}

LabeledMatrix set_entry(const LabeledMatrix& A, const Label& row, const Label& col,
                        const FieldElem& value) {
  if (value.field() != A.field())
    throw Error(ErrorKind::FieldMismatch, value.field().name() + " vs " + A.field().name());
  auto i = A.row_index(row);
  if (!i) throw Error(ErrorKind::UnknownLabel, "no row '" + row + "'");
  auto j = A.col_index(col);
  if (!j) throw Error(ErrorKind::UnknownLabel, "no column '" + col + "'");
  std::vector<Code> entries(A.data().begin(), A.data().end());
  entries[*i * A.col_count() + *j] = value.code();
  return LabeledMatrix(A.field(), A.rows(), A.cols(), std::move(entries));
}

}  // namespace matfrag
