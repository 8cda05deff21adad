#include "matfrag/reductions.hpp"

#include <algorithm>
#include <bit>
#include <chrono>

namespace matfrag {

namespace {

LabelSet set_union(const LabelSet& a, const LabelSet& b) {
  LabelSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

LabelSet set_minus(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

[[noreturn]] void violated(const std::string& what) {
  throw Error(ErrorKind::PostconditionViolation, what);
}

class Stopwatch {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

}  // namespace

unsigned relative_degree(const Field& f, const Field& base) { return f.degree() / base.degree(); }

unsigned side_degree(std::size_t size, unsigned align_to) {
  const unsigned base = std::max<unsigned>(1, static_cast<unsigned>(size));
  if (align_to == 0) return base;
  for (unsigned d = base; d <= align_to; ++d)
    if (align_to % d == 0) return d;
  return base;
}

Label fresh_label(const std::string& base, const LabelSet& taken) {
  if (!taken.contains(base)) return base;
  for (int i = 1;; ++i) {
    Label l = base + "_" + std::to_string(i);
    if (!taken.contains(l)) return l;
  }
}

// ---------------------------------------------------------------- zero_out

ZeroOutResult zero_out(const ReprMatroid& M, const ReprMatroid& N) {
  if (!is_N_fragile(M, N)) throw Error(ErrorKind::NotFragile, "M is not N-fragile");
  const auto B = display_basis(M, N);
  if (!B) violated("an N-fragile matroid has no basis displaying N");
  const ReprMatroid displayed = with_basis(M, *B);
  const LabelSet EN = N.ground_set();
  const LabeledMatrix& A = displayed.rep();

  std::vector<Code> entries(A.data().begin(), A.data().end());
  for (std::size_t i = 0; i < A.row_count(); ++i)
    for (std::size_t j = 0; j < A.col_count(); ++j)
      if (EN.contains(A.rows()[i]) && EN.contains(A.cols()[j])) entries[i * A.col_count() + j] = 0;
  LabeledMatrix zeroed(A.field(), A.rows(), A.cols(), std::move(entries));
  ReprMatroid result(zeroed);

  LabelSet BN;
  std::set_intersection(B->begin(), B->end(), EN.begin(), EN.end(), std::inserter(BN, BN.end()));

  if (const auto v = check_X_fragile_matrix(zeroed, EN); !v.fragile)
    violated("zeroed matrix is not E(N)-fragile (" + v.failure + ")");
  if (!is_N_fragile(result, isolated(BN, EN, A.field())))
    violated("zeroed matroid is not iso(B_N, E(N))-fragile");
  if (!equals(contraction(result, BN), contraction(M, BN)))
    violated("zeroing changed M / B_N");
  return {std::move(result), std::move(zeroed), *B, std::move(BN)};
}

// ---------------------------------------------------------------- free extension

std::optional<LabelSet> free_addition_violation(const ReprMatroid& extended, const Label& e,
                                                const LabelSet& X) {
  const Mask em = extended.mask_of(e);
  const Mask xm = extended.mask_of(X);
  if (xm & em) throw Error(ErrorKind::InvalidArgs, "the new element cannot be in X");
  if (extended.rank_of(xm | em) != extended.rank_of(xm)) return X;
  const Mask old = extended.full_mask() & ~em;
  for (Mask S : subsets_by_size(old)) {
    const std::size_t r = extended.rank_of(S);
    if (extended.rank_of(S | em) != r) continue;  // e not spanned by S
    for (Mask rest = xm & ~S; rest != 0; rest &= rest - 1) {
      const Mask x = rest & (~rest + 1);
      if (extended.rank_of(S | x) != r) return extended.labels_of(S);
    }
  }
  return std::nullopt;
}

LabeledMatrix free_extension(const LabeledMatrix& A, const LabelSet& X, const Label& e, unsigned degree,
                             const FieldLimits& limits) {
  if (A.row_index(e) || A.col_index(e))
    throw Error(ErrorKind::LabelCollision, "'" + e + "' is already a label");
  for (const auto& v : X)
    if (!A.row_index(v) && !A.col_index(v))
      throw Error(ErrorKind::UnknownLabel, "'" + v + "' is not a label");
  const unsigned k = static_cast<unsigned>(X.size());
  if (degree == 0) degree = std::max(k, 1u);
  if (degree < k) throw Error(ErrorKind::InvalidArgs, "extension degree is smaller than |X|");

  const Field& F = A.field();
  const Field Fk = extend_field(F, degree, limits);
  const auto alpha = subfield_basis(Fk, F);

  std::vector<Code> b(A.row_count(), 0);
  std::size_t t = 0;
  for (const auto& v : X) {
    const Code a = alpha[t++].code();
    if (auto r = A.row_index(v)) {
      b[*r] = Fk.add(b[*r], a);
    } else {
      const std::size_t j = *A.col_index(v);
      for (std::size_t i = 0; i < A.row_count(); ++i) b[i] = Fk.add(b[i], Fk.mul(a, A.at(i, j)));
    }
  }

  std::vector<Label> cols = A.cols();
  cols.push_back(e);
  std::vector<Code> entries;
  entries.reserve(A.row_count() * cols.size());
  for (std::size_t i = 0; i < A.row_count(); ++i) {
    for (std::size_t j = 0; j < A.col_count(); ++j) entries.push_back(A.at(i, j));
    entries.push_back(b[i]);
  }
  LabeledMatrix out(Fk, A.rows(), std::move(cols), std::move(entries));

  const ReprMatroid before(A), after(out);
  for (Mask S = 0; S <= before.full_mask(); ++S) {
    if (after.rank_of(after.mask_of(before.labels_of(S))) != before.rank_of(S))
      violated("lifting changed the rank of " + std::to_string(S));
    if (S == before.full_mask()) break;
  }
  if (auto bad = free_addition_violation(after, e, X)) {
    std::string msg = "free-addition condition fails at S = {";
    for (const auto& l : *bad) msg += l + ",";
    violated(msg + "}");
  }
  return out;
}

// ---------------------------------------------------------------- collapse

ReprMatroid collapse_side(const ReprMatroid& M, const LabelSet& X1, const LabelSet& X2, const Label& d,
                          unsigned degree, const FieldLimits& limits) {
  for (const auto& x : X1)
    if (X2.contains(x)) throw Error(ErrorKind::InvalidArgs, "X1 and X2 must be disjoint");
  if (M.ground_set().contains(d)) throw Error(ErrorKind::LabelCollision, "'" + d + "' is already in E(M)");
  const ReprMatroid N = isolated(X1, set_union(X1, X2), M.field());
  if (!is_N_fragile(M, N)) throw Error(ErrorKind::NotFragile, "M is not iso(X1, X1 ∪ X2)-fragile");

  const auto B = display_basis(M, N);
  if (!B) violated("no basis displays iso(X1, X1 ∪ X2)");
  const ReprMatroid displayed = with_basis(M, *B);
  const LabeledMatrix extended = free_extension(displayed.rep(), X2, d, degree, limits);
  ReprMatroid result = deletion(ReprMatroid(extended), X2);

  if (!is_N_fragile(result, isolated(X1, set_union(X1, {d}), result.field())))
    violated("result is not iso(X1, X1 ∪ {d})-fragile");
  return result;
}

TwoElementReduction reduce_to_two(const ReprMatroid& M, const LabelSet& X1, const LabelSet& X2, const Label& c,
                                  const Label& d, const ReduceOptions& options) {
  if (c == d) throw Error(ErrorKind::LabelCollision, "c and d must differ");
  const LabelSet E = M.ground_set();
  // A singleton side may name itself: collapsing it is a relabeling.
  const bool keep_d = X2 == LabelSet{d}, keep_c = X1 == LabelSet{c};
  if ((E.contains(c) && !keep_c) || (E.contains(d) && !keep_d))
    throw Error(ErrorKind::LabelCollision, "c and d must be new elements or name a singleton side");

  const unsigned deg2 = keep_d ? 1 : side_degree(X2.size(), options.align_to);
  const unsigned deg1 = keep_c ? 1 : side_degree(X1.size(), options.align_to);

  ReprMatroid first = keep_d ? M : collapse_side(M, X1, X2, d, deg2, options.limits);
  // In the dual the isolated minor is iso({d}, X1 ∪ {d}) with X1 as loops.
  ReprMatroid result = keep_c ? first : dual(collapse_side(dual(first), {d}, X1, c, deg1, options.limits));

  if (!is_N_fragile(result, isolated({c}, {c, d}, result.field())))
    violated("result is not iso({c},{c,d})-fragile");
  if (!equals(minor(result, {{c}, {d}}), minor(M, {X1, X2})))
    violated("M' / c \\ d differs from M / X1 \\ X2");
  if (relative_degree(result.field(), M.field()) != deg1 * deg2) violated("unexpected extension degree");
  return {std::move(result), std::move(first), deg2, deg1};
}

// ---------------------------------------------------------------- relaxation

std::vector<LabelSet> rank_differences(const LabeledMatrix& A1, const LabeledMatrix& A2) {
  if (A1.rows() != A2.rows() || A1.cols() != A2.cols())
    throw Error(ErrorKind::GroundSetMismatch, "matrices have different labels");
  const ReprMatroid index(A1);
  std::vector<Mask> row_bit(index.size(), 0), col_bit(index.size(), 0);
  for (std::size_t g = 0; g < index.size(); ++g) {
    if (auto i = A1.row_index(index.ground()[g]))
      row_bit[g] = Mask{1} << *i;
    else
      col_bit[g] = Mask{1} << *A1.col_index(index.ground()[g]);
  }
  std::vector<LabelSet> out;
  for (Mask Z : subsets_by_size(index.full_mask())) {
    Mask rm = 0, cm = 0;
    for (std::size_t g = 0; g < index.size(); ++g)
      if (Z >> g & 1u) {
        rm |= row_bit[g];
        cm |= col_bit[g];
      }
    if (block_rank(A1, rm, cm) != block_rank(A2, rm, cm)) out.push_back(index.labels_of(Z));
  }
  return out;
}

Relaxation relax_entry(const ReprMatroid& M, const LabelSet& C, const LabelSet& D, const FieldLimits& limits) {
  const ReprMatroid N = minor(M, {C, D});
  if (N.size() != 2) throw Error(ErrorKind::NotFragile, "C and D must leave exactly two elements");
  // iso({c},{c,d}): rank one with exactly one loop d.
  const auto& g = N.ground();
  const bool loop0 = N.rank_of(1) == 0, loop1 = N.rank_of(2) == 0;
  if (N.rank() != 1 || loop0 == loop1)
    throw Error(ErrorKind::NotFragile, "M / C \\ D is not of the form iso({c},{c,d})");
  const Label c = loop0 ? g[1] : g[0];
  const Label d = loop0 ? g[0] : g[1];
  const Field& F = M.field();
  if (!is_N_fragile(M, isolated({c}, {c, d}, F)))
    throw Error(ErrorKind::NotFragile, "M is not iso({c},{c,d})-fragile");

  LabelSet B = C;
  B.insert(c);
  if (B.size() != M.rank() || M.rank_of(M.mask_of(B)) != B.size()) violated("C ∪ {c} is not a basis");
  ReprMatroid m1 = with_basis(M, B);
  const LabeledMatrix& A1 = m1.rep();
  if (A1.at(c, d) != 0) violated("the (c,d) entry of the displayed representation is nonzero");
  if (const auto v = check_X_fragile_matrix(A1, {c, d}); !v.fragile)
    violated("displayed representation is not {c,d}-fragile (" + v.failure + ")");

  const Field F2 = extend_field(F, 2, limits);
  const FieldElem theta = F2.generator();
  if (is_in_subfield(theta, F)) violated("theta lies in the base field");
  ReprMatroid m2(set_entry(lift(A1, F2), c, d, theta));

  LabelSet H = set_minus(A1.row_set(), {c});
  H.insert(d);

  if (!equals(m1, M)) violated("re-displaying changed the matroid");
  if (!is_relaxation(m1, m2, H)) violated("M2 is not the relaxation of H in M1");
  if (!is_circuit(dual(m1), set_minus(m1.ground_set(), H))) violated("E - H is not a cocircuit of M1");
  const auto diffs = rank_differences(lift(A1, F2), m2.rep());
  if (diffs.size() != 1 || diffs.front() != LabelSet{c, d})
    violated("ranks of A1 and A2 differ outside Z = {c,d}");
  return {std::move(m1), std::move(m2), std::move(H), c, d, theta};
}

// ---------------------------------------------------------------- pipeline

bool ReductionTrace::all_verdicts() const {
  for (const auto& s : stages)
    for (const auto& [name, ok] : s.verdicts)
      if (!ok) return false;
  return true;
}

ReductionTrace pipeline(const ReprMatroid& M, const ReprMatroid& N, const PipelineOptions& options) {
  ReductionTrace trace(M, N);
  trace.conformance = options.conformance;
  const Field& F = M.field();
  const unsigned k = static_cast<unsigned>(N.size());
  trace.k = k;
  if (k == 0) throw Error(ErrorKind::InvalidArgs, "N must have at least one element");
  const unsigned bound = 2 * k * k;

  FieldLimits limits = options.limits;
  if (options.conformance) limits.max_degree = std::max(limits.max_degree, F.degree() * bound);

  {
    Stopwatch sw;
    const bool fragile = is_N_fragile(M, N);
    trace.stages.push_back({"fragility", 1, {}, {{"is_N_fragile", fragile}}, sw.millis()});
    if (!fragile) throw Error(ErrorKind::NotFragile, "M is not N-fragile");
  }

  Stopwatch sw1;
  ZeroOutResult z = zero_out(M, N);
  trace.display_basis = z.display_basis;
  trace.minor_basis = z.minor_basis;
  const LabelSet EN = N.ground_set();
  const LabelSet X1 = z.minor_basis;
  const LabelSet X2 = set_minus(EN, X1);
  trace.stages.push_back({"zero_out",
                          1,
                          {{"M_prime", z.matroid}},
                          {{"x_fragile", true}, {"iso_fragile", true}, {"contraction_preserved", true}},
                          sw1.millis()});

  Stopwatch sw2;
  const LabelSet E = M.ground_set();
  trace.c = X1.size() == 1 ? *X1.begin() : fresh_label("c", E);
  trace.d = X2.size() == 1 ? *X2.begin() : fresh_label("d", set_union(E, {trace.c}));
  TwoElementReduction two = reduce_to_two(z.matroid, X1, X2, trace.c, trace.d, {k, limits});
  trace.stages.push_back({"reduce_to_two",
                          relative_degree(two.matroid.field(), F),
                          {{"after_first_side", two.after_first_side}, {"two_element", two.matroid}},
                          {{"iso_cd_fragile", true}, {"minor_preserved", true}},
                          sw2.millis()});

  Stopwatch sw3;
  const auto parts = fragile_partitions(two.matroid, isolated({trace.c}, {trace.c, trace.d}, two.matroid.field()));
  if (parts.size() != 1) violated("two-element stage lost iso({c},{c,d})-fragility");
  Relaxation rel = relax_entry(two.matroid, parts.front().contract, parts.front().remove, limits);
  trace.hyperplane = rel.hyperplane;
  ReprMatroid m1 = rel.m1, m2 = rel.m2;
  trace.stages.push_back({"relax_entry",
                          relative_degree(m2.field(), F),
                          {{"M1", m1}, {"M2", m2}},
                          {{"circuit_hyperplane", true}, {"relaxation", true}, {"rank_change_only_at_cd", true}},
                          sw3.millis()});

  Stopwatch sw4;
  std::vector<std::pair<std::string, bool>> final_verdicts;
  if (options.conformance) {
    const unsigned current = relative_degree(m2.field(), F);
    if (bound % current != 0) violated("relaxation field degree does not divide 2k^2");
    const Field target = extend_field(m2.field(), bound / current, limits);
    m1 = ReprMatroid(lift(m1.rep(), target));
    m2 = ReprMatroid(lift(m2.rep(), target));
    final_verdicts.emplace_back("conformance_degree", relative_degree(target, F) == bound);
  }
  const unsigned deg1 = relative_degree(m1.field(), F);
  const unsigned deg2 = relative_degree(m2.field(), F);
  trace.final_degree = deg2;
  final_verdicts.emplace_back(
      "minor_identity",
      equals(minor(M, {z.minor_basis, X2}), minor(m1, {{trace.c}, {trace.d}})));
  final_verdicts.emplace_back("relaxation", is_relaxation(m1, m2, rel.hyperplane));
  final_verdicts.emplace_back("degree_divides_2k2", bound % deg1 == 0 && bound % deg2 == 0);
  trace.stages.push_back({"final", deg2, {}, final_verdicts, sw4.millis()});
  trace.m1 = std::move(m1);
  trace.m2 = std::move(m2);

  for (const auto& [name, ok] : final_verdicts)
    if (!ok) violated("pipeline verdict '" + name + "' failed");
  return trace;
}

}  // namespace matfrag
