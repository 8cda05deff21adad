#include "matfrag/matroid.hpp"

#include <algorithm>
#include <bit>

namespace matfrag {

ReprMatroid::ReprMatroid(LabeledMatrix rep) : rep_(std::move(rep)) {
  std::merge(rep_.rows().begin(), rep_.rows().end(), rep_.cols().begin(), rep_.cols().end(),
             std::back_inserter(ground_));
  if (ground_.size() > 31)
    throw Error(ErrorKind::CapExceeded, "ground sets are limited to 31 elements");
  index_.resize(ground_.size());
  std::size_t i = 0, j = 0;
  for (std::size_t g = 0; g < ground_.size(); ++g) {
    if (i < rep_.row_count() && rep_.rows()[i] == ground_[g]) {
      row_bits_ |= Mask{1} << g;
      index_[g] = static_cast<std::uint8_t>(i++);
    } else {
      index_[g] = static_cast<std::uint8_t>(j++);
    }
  }
}

Mask ReprMatroid::mask_of(const LabelSet& X) const {
  Mask m = 0;
  for (const auto& l : X) {
    auto it = std::lower_bound(ground_.begin(), ground_.end(), l);
    if (it == ground_.end() || *it != l)
      throw Error(ErrorKind::UnknownLabel, "label '" + l + "' is not in the ground set");
    m |= Mask{1} << (it - ground_.begin());
  }
  return m;
}

LabelSet ReprMatroid::labels_of(Mask m) const {
  LabelSet out;
  for (std::size_t g = 0; g < ground_.size(); ++g)
    if (m >> g & 1u) out.insert(ground_[g]);
  return out;
}

std::size_t ReprMatroid::rank_of(Mask X) const {
  Mask row_mask = 0, col_mask = 0;
  std::size_t in_basis = 0;
  for (std::size_t g = 0; g < ground_.size(); ++g) {
    const bool in_x = X >> g & 1u;
    if (row_bits_ >> g & 1u) {
      if (in_x)
        ++in_basis;
      else
        row_mask |= Mask{1} << index_[g];
    } else if (in_x) {
      col_mask |= Mask{1} << index_[g];
    }
  }
  return in_basis + block_rank(rep_, row_mask, col_mask);
}

std::size_t rank_set(const ReprMatroid& M, const LabelSet& X) { return M.rank_of(M.mask_of(X)); }

std::vector<std::uint8_t> rank_table(const ReprMatroid& M, std::size_t max_ground) {
  if (M.size() > max_ground)
    throw Error(ErrorKind::CapExceeded, "ground set of " + std::to_string(M.size()) +
                                            " elements exceeds the cap " + std::to_string(max_ground));
  std::vector<std::uint8_t> table(std::size_t{1} << M.size());
  for (Mask X = 0; X < table.size(); ++X) table[X] = static_cast<std::uint8_t>(M.rank_of(X));
  return table;
}

namespace {

ReprMatroid drop(const ReprMatroid& M, const Label& label) {
  const LabeledMatrix& A = M.rep();
  std::vector<Label> rows, cols;
  std::vector<std::size_t> ri, ci;
  for (std::size_t i = 0; i < A.row_count(); ++i)
    if (A.rows()[i] != label) {
      rows.push_back(A.rows()[i]);
      ri.push_back(i);
    }
  for (std::size_t j = 0; j < A.col_count(); ++j)
    if (A.cols()[j] != label) {
      cols.push_back(A.cols()[j]);
      ci.push_back(j);
    }
  std::vector<Code> entries;
  entries.reserve(ri.size() * ci.size());
  for (auto i : ri)
    for (auto j : ci) entries.push_back(A.at(i, j));
  return ReprMatroid(LabeledMatrix(A.field(), std::move(rows), std::move(cols), std::move(entries)));
}

std::optional<std::size_t> first_nonzero_in_col(const LabeledMatrix& A, std::size_t j) {
  for (std::size_t i = 0; i < A.row_count(); ++i)
    if (A.at(i, j) != 0) return i;
  return std::nullopt;
}

std::optional<std::size_t> first_nonzero_in_row(const LabeledMatrix& A, std::size_t i) {
  for (std::size_t j = 0; j < A.col_count(); ++j)
    if (A.at(i, j) != 0) return j;
  return std::nullopt;
}

ReprMatroid contract_one(const ReprMatroid& M, const Label& c) {
  const LabeledMatrix& A = M.rep();
  if (A.row_index(c)) return drop(M, c);
  const std::size_t j = *A.col_index(c);
  if (auto i = first_nonzero_in_col(A, j)) return drop(pivot(M, A.rows()[*i], c), c);
  return drop(M, c);  // loop: contraction equals deletion
}

ReprMatroid delete_one(const ReprMatroid& M, const Label& d) {
  const LabeledMatrix& A = M.rep();
  if (A.col_index(d)) return drop(M, d);
  const std::size_t i = *A.row_index(d);
  if (auto j = first_nonzero_in_row(A, i)) return drop(pivot(M, d, A.cols()[*j]), d);
  return drop(M, d);  // coloop: deletion equals contraction
}

}  // namespace

ReprMatroid pivot(const ReprMatroid& M, const Label& row, const Label& col) {
  const LabeledMatrix& A = M.rep();
  const Field& F = A.field();
  const auto r = A.row_index(row);
  const auto c = A.col_index(col);
  if (!r || !c) throw Error(ErrorKind::UnknownLabel, "pivot (" + row + ", " + col + ") is not an entry");
  const Code a = A.at(*r, *c);
  if (a == 0) throw Error(ErrorKind::InvalidArgs, "pivot entry (" + row + ", " + col + ") is zero");
  const Code ainv = F.inv(a);

  std::vector<Label> rows = A.rows(), cols = A.cols();
  rows[*r] = col;
  cols[*c] = row;
  std::vector<Code> entries(A.row_count() * A.col_count());
  for (std::size_t i = 0; i < A.row_count(); ++i) {
    for (std::size_t j = 0; j < A.col_count(); ++j) {
      Code v;
      if (i == *r && j == *c) {
        v = ainv;
      } else if (i == *r) {
        v = F.mul(A.at(*r, j), ainv);
      } else if (j == *c) {
        v = F.neg(F.mul(A.at(i, *c), ainv));
      } else {
        v = F.sub(A.at(i, j), F.mul(F.mul(A.at(i, *c), A.at(*r, j)), ainv));
      }
      entries[i * A.col_count() + j] = v;
    }
  }
  return ReprMatroid(LabeledMatrix(F, std::move(rows), std::move(cols), std::move(entries)));
}

ReprMatroid with_basis(const ReprMatroid& M, const LabelSet& B) {
  const Mask bm = M.mask_of(B);
  if (B.size() != M.rank() || M.rank_of(bm) != B.size())
    throw Error(ErrorKind::InvalidArgs, "the given set is not a basis");
  ReprMatroid cur = M;
  for (const auto& b : B) {
    const LabeledMatrix& A = cur.rep();
    const auto j = A.col_index(b);
    if (!j) continue;
    std::optional<Label> row;
    for (std::size_t i = 0; i < A.row_count(); ++i)
      if (!B.contains(A.rows()[i]) && A.at(i, *j) != 0) {
        row = A.rows()[i];
        break;
      }
    if (!row) throw Error(ErrorKind::PostconditionViolation, "no pivot for basis element '" + b + "'");
    cur = pivot(cur, *row, b);
  }
  return cur;
}

ReprMatroid minor(const ReprMatroid& M, const MinorSpec& spec) {
  for (const auto& c : spec.contract)
    if (spec.remove.contains(c))
      throw Error(ErrorKind::InvalidMinorSpec, "'" + c + "' is both contracted and deleted");
  const LabelSet E = M.ground_set();
  for (const auto* s : {&spec.contract, &spec.remove})
    for (const auto& l : *s)
      if (!E.contains(l)) throw Error(ErrorKind::InvalidMinorSpec, "'" + l + "' is not in the ground set");
  ReprMatroid cur = M;
  for (const auto& c : spec.contract) cur = contract_one(cur, c);
  for (const auto& d : spec.remove) cur = delete_one(cur, d);
  return cur;
}

ReprMatroid deletion(const ReprMatroid& M, const LabelSet& D) { return minor(M, {{}, D}); }
ReprMatroid contraction(const ReprMatroid& M, const LabelSet& C) { return minor(M, {C, {}}); }

ReprMatroid dual(const ReprMatroid& M) { return ReprMatroid(negate(transpose(M.rep()))); }

ReprMatroid isolated(const LabelSet& B, const LabelSet& E, const Field& field) {
  LabelSet rest;
  for (const auto& b : B)
    if (!E.contains(b)) throw Error(ErrorKind::InvalidArgs, "basis element '" + b + "' is not in E");
  std::set_difference(E.begin(), E.end(), B.begin(), B.end(), std::inserter(rest, rest.end()));
  return ReprMatroid(LabeledMatrix::zeros(field, B, rest));
}

bool equals(const ReprMatroid& M1, const ReprMatroid& M2, std::size_t max_ground) {
  if (M1.ground() != M2.ground()) return false;
  if (M1.size() > max_ground)
    throw Error(ErrorKind::CapExceeded, "equals on " + std::to_string(M1.size()) +
                                            " elements exceeds the cap " + std::to_string(max_ground));
  if (M1.rank() != M2.rank()) return false;
  const Mask n = M1.full_mask();
  for (Mask X = 0;; ++X) {
    if (M1.rank_of(X) != M2.rank_of(X)) return false;
    if (X == n) break;
  }
  return true;
}

std::vector<Mask> basis_masks(const ReprMatroid& M) {
  std::vector<Mask> out;
  const Mask n = M.full_mask();
  const auto r = static_cast<int>(M.rank());
  for (Mask X = 0;; ++X) {
    if (std::popcount(X) == r && M.rank_of(X) == M.rank()) out.push_back(X);
    if (X == n) break;
  }
  return out;
}

std::set<LabelSet> bases(const ReprMatroid& M) {
  std::set<LabelSet> out;
  for (Mask X : basis_masks(M)) out.insert(M.labels_of(X));
  return out;
}

Mask closure(const ReprMatroid& M, Mask X) {
  const std::size_t r = M.rank_of(X);
  Mask out = X;
  for (std::size_t g = 0; g < M.size(); ++g) {
    const Mask e = Mask{1} << g;
    if (!(X & e) && M.rank_of(X | e) == r) out |= e;
  }
  return out;
}

LabelSet closure(const ReprMatroid& M, const LabelSet& X) {
  return M.labels_of(closure(M, M.mask_of(X)));
}

bool is_circuit(const ReprMatroid& M, Mask X) {
  if (X == 0) return false;
  const std::size_t n = static_cast<std::size_t>(std::popcount(X));
  if (M.rank_of(X) != n - 1) return false;
  for (Mask rest = X; rest != 0; rest &= rest - 1) {
    const Mask e = rest & (~rest + 1);
    if (M.rank_of(X & ~e) != n - 1) return false;
  }
  return true;
}

bool is_circuit(const ReprMatroid& M, const LabelSet& X) { return is_circuit(M, M.mask_of(X)); }

bool is_flat(const ReprMatroid& M, Mask X) { return closure(M, X) == X; }

bool is_circuit_hyperplane(const ReprMatroid& M, const LabelSet& H) {
  const Mask h = M.mask_of(H);
  if (M.rank() == 0) return false;
  return is_circuit(M, h) && M.rank_of(h) + 1 == M.rank() && is_flat(M, h);
}

bool is_relaxation(const ReprMatroid& M1, const ReprMatroid& M2, const LabelSet& H) {
  if (M1.ground() != M2.ground()) throw Error(ErrorKind::GroundSetMismatch, "relaxation needs equal ground sets");
  if (!is_circuit_hyperplane(M1, H)) return false;
  auto expected = basis_masks(M1);
  expected.push_back(M1.mask_of(H));
  std::sort(expected.begin(), expected.end());
  return basis_masks(M2) == expected;
}

std::vector<Mask> subsets_by_size(Mask universe) {
  std::vector<int> pos;
  for (int g = 0; g < 32; ++g)
    if (universe >> g & 1u) pos.push_back(g);
  std::vector<Mask> out;
  out.reserve(std::size_t{1} << pos.size());
  const int n = static_cast<int>(pos.size());
  std::vector<int> combo;
  for (int k = 0; k <= n; ++k) {
    combo.resize(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) combo[static_cast<std::size_t>(i)] = i;
    while (true) {
      Mask m = 0;
      for (int i : combo) m |= Mask{1} << pos[static_cast<std::size_t>(i)];
      out.push_back(m);
      int i = k - 1;
      while (i >= 0 && combo[static_cast<std::size_t>(i)] == n - k + i) --i;
      if (i < 0) break;
      ++combo[static_cast<std::size_t>(i)];
      for (int t = i + 1; t < k; ++t) combo[static_cast<std::size_t>(t)] = combo[static_cast<std::size_t>(t - 1)] + 1;
    }
  }
  return out;
}

}  // namespace matfrag
