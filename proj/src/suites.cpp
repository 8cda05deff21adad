#include "matfrag/suites.hpp"

#include <chrono>
#include <functional>
#include <random>

#include "matfrag/generate.hpp"

namespace matfrag {

namespace {

using Clock = std::chrono::steady_clock;

double millis_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::uint64_t case_seed(std::uint64_t suite_seed, std::uint64_t tag, std::size_t i) {
  return mix_seed(mix_seed(suite_seed * 0x100000001b3ULL + tag) + i);
}

unsigned pick(std::mt19937_64& rng, unsigned lo, unsigned hi) {
  return std::uniform_int_distribution<unsigned>(lo, hi)(rng);
}

LabelSet set_minus(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  for (const auto& x : a)
    if (!b.contains(x)) out.insert(x);
  return out;
}

LabelSet set_intersect(const LabelSet& a, const LabelSet& b) {
  LabelSet out;
  for (const auto& x : a)
    if (b.contains(x)) out.insert(x);
  return out;
}

// Accumulates cases and failures for one suite.
class Recorder {
 public:
  explicit Recorder(std::string name, std::uint64_t seed) : t0_(Clock::now()) {
    result_.name = std::move(name);
    result_.report = {{"suite", result_.name}, {"seed", seed}, {"failures", json::array()}};
  }

  // Histogram of instance sizes, reported as "ground_sizes".
  void saw_size(std::size_t n) {
    json& h = result_.report["ground_sizes"];
    if (h.is_null()) h = json::object();
    const std::string key = std::to_string(n);
    h[key] = h.value(key, 0) + 1;
  }

  void pass() {
    ++result_.cases;
    ++result_.passed;
  }

  void fail(json witness) {
    ++result_.cases;
    result_.report["failures"].push_back(std::move(witness));
  }

  json& report() { return result_.report; }

  SuiteResult finish() {
    result_.millis = millis_since(t0_);
    result_.report["cases"] = result_.cases;
    result_.report["passed"] = result_.passed;
    result_.report["timing_ms"] = result_.millis;
    return std::move(result_);
  }

 private:
  SuiteResult result_;
  Clock::time_point t0_;
};

// Draws sizes until the generator accepts an instance.
Generated draw(GenKind kind, std::mt19937_64& rng, const std::function<GenParams(std::mt19937_64&)>& sizes,
               std::size_t& redraws) {
  for (int tries = 0;; ++tries) {
    GenParams p = sizes(rng);
    p.seed = rng();
    try {
      return gen_random(kind, p);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::Exhausted || tries > 200) throw;
      ++redraws;
    }
  }
}

json error_witness(const Error& e) { return {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}}; }

}  // namespace

// ---------------------------------------------------------------- field core

SuiteResult suite_field_core(const SuiteConfig& cfg) {
  Recorder rec("field_core", cfg.seed);
  for (unsigned q : {2u, 3u, 4u, 5u, 7u, 8u, 9u}) {
    const Field F = field_of_order(q);
    json bad;
    auto check = [&](bool ok, const char* axiom, Code a, Code b, Code c) {
      if (!ok && bad.is_null()) bad = {{"field", F.name()}, {"axiom", axiom}, {"a", a}, {"b", b}, {"c", c}};
    };
    for (Code a = 0; a < q; ++a) {
      check(F.add(a, 0) == a, "additive identity", a, 0, 0);
      check(F.mul(a, 1) == a, "multiplicative identity", a, 0, 0);
      check(F.add(a, F.neg(a)) == 0, "additive inverse", a, 0, 0);
      if (a != 0) check(F.mul(a, F.inv(a)) == 1, "multiplicative inverse", a, 0, 0);
      for (Code b = 0; b < q; ++b) {
        check(F.add(a, b) == F.add(b, a), "additive commutativity", a, b, 0);
        check(F.mul(a, b) == F.mul(b, a), "multiplicative commutativity", a, b, 0);
        check(a == 0 || b == 0 || F.mul(a, b) != 0, "no zero divisors", a, b, 0);
        for (Code c = 0; c < q; ++c) {
          check(F.add(F.add(a, b), c) == F.add(a, F.add(b, c)), "additive associativity", a, b, c);
          check(F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c)), "multiplicative associativity", a, b, c);
          check(F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c)), "distributivity", a, b, c);
        }
      }
    }
    if (bad.is_null())
      rec.pass();
    else
      rec.fail(bad);
  }

  const Field F2 = make_prime_field(2), F3 = make_prime_field(3);
  const Field F4 = extend_field(F2, 2);
  const std::pair<Field, Field> pairs[] = {{F4, F2}, {extend_field(F3, 2), F3}, {extend_field(F4, 2), F4}};
  for (const auto& [ext, sub] : pairs) {
    std::vector<bool> image(ext.order(), false);
    for (Code s = 0; s < sub.order(); ++s) image[embed(sub.elem(s), ext).code()] = true;
    json bad;
    for (Code a = 0; a < ext.order() && bad.is_null(); ++a) {
      const bool frobenius = ext.pow(a, sub.order()) == a;
      const bool member = is_in_subfield(ext.elem(a), sub);
      if (frobenius != image[a] || member != image[a])
        bad = {{"extension", ext.name()}, {"subfield", sub.name()}, {"a", a},
               {"frobenius_fixed", frobenius}, {"in_image", static_cast<bool>(image[a])}};
    }
    if (bad.is_null())
      rec.pass();
    else
      rec.fail(bad);
  }
  return rec.finish();
}

// ---------------------------------------------------------------- X-fragile matrices give iso-fragile matroids

SuiteResult suite_xfragile_converse(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec("xfragile_converse", cfg.seed);
  std::size_t rejections = 0, redraws = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(case_seed(cfg.seed, 2, i));
    const Generated g = draw(GenKind::XFragile, rng, [](std::mt19937_64& r) {
      GenParams p;
      p.q = pick(r, 0, 1) ? 3 : 2;
      const unsigned n = pick(r, 2, 8);
      p.rows = pick(r, 1, n - 1);
      p.cols = n - p.rows;
      const unsigned x = pick(r, 1, std::min(3u, n));
      p.x_rows = pick(r, x > p.cols ? x - p.cols : 0, std::min(p.rows, x));
      p.x_cols = x - p.x_rows;
      return p;
    }, redraws);
    rejections += g.rejections;
    const ReprMatroid& M = g.instance.matroid;
    rec.saw_size(M.size());
    const LabelSet& X = g.instance.task->X;
    const ReprMatroid N = isolated(set_intersect(X, M.basis()), X, M.field());
    if (is_N_fragile(M, N))
      rec.pass();
    else
      rec.fail({{"case", i}, {"instance", instance_to_json(g.instance)},
                {"partitions", fragile_partitions(M, N).size()}});
  }
  rec.report()["rejections"] = rejections;
  rec.report()["redraws"] = redraws;
  return rec.finish();
}

// ---------------------------------------------------------------- zeroing the displayed block

SuiteResult suite_zero_out(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec("zero_out", cfg.seed);
  std::size_t rejections = 0, redraws = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(case_seed(cfg.seed, 3, i));
    const Generated g = draw(GenKind::NFragile, rng, [](std::mt19937_64& r) {
      GenParams p;
      p.q = pick(r, 0, 1) ? 3 : 2;
      const unsigned n = pick(r, 2, 7);
      p.rows = pick(r, 1, n - 1);
      p.cols = n - p.rows;
      p.minor_size = pick(r, 1, std::min(3u, n));
      return p;
    }, redraws);
    rejections += g.rejections;
    const ReprMatroid& M = g.instance.matroid;
    const ReprMatroid& N = *g.instance.task->minor;
    rec.saw_size(M.size());
    json witness = {{"case", i}, {"instance", instance_to_json(g.instance)}};
    try {
      const ZeroOutResult z = zero_out(M, N);
      const auto xf = check_X_fragile_matrix(z.matrix, N.ground_set());
      const bool same = equals(contraction(z.matroid, z.minor_basis), contraction(M, z.minor_basis));
      if (xf.fragile && same) {
        rec.pass();
        continue;
      }
      witness["zeroed"] = matrix_to_json(z.matrix);
      witness["x_fragile"] = xf.fragile;
      if (xf.witness) witness["Y"] = labels_to_json(*xf.witness);
      witness["contraction_preserved"] = same;
    } catch (const Error& e) {
      witness.update(error_witness(e));
    }
    rec.fail(std::move(witness));
  }
  rec.report()["rejections"] = rejections;
  rec.report()["redraws"] = redraws;
  return rec.finish();
}

// ---------------------------------------------------------------- free extensions

SuiteResult suite_free_extension(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec("free_extension", cfg.seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(case_seed(cfg.seed, 4, i));
    const Field F = field_of_order(pick(rng, 0, 1) ? 3 : 2);
    const unsigned rows = pick(rng, 1, 3);
    const unsigned cols = pick(rng, 1, 6 - rows);
    std::vector<Label> rl, cl;
    for (unsigned r = 0; r < rows; ++r) rl.push_back("r" + std::to_string(r + 1));
    for (unsigned c = 0; c < cols; ++c) cl.push_back("s" + std::to_string(c + 1));
    std::vector<Code> entries(rows * cols);
    for (auto& e : entries) e = std::uniform_int_distribution<Code>(0, F.order() - 1)(rng);
    const LabeledMatrix A(F, rl, cl, std::move(entries));
    rec.saw_size(rows + cols + 1);
    std::vector<Label> shuffled = cl;
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const LabelSet X(shuffled.begin(), shuffled.begin() + pick(rng, 0, std::min(3u, cols)));

    json witness = {{"case", i}, {"matrix", matroid_to_json(ReprMatroid(A))}, {"X", labels_to_json(X)}};
    try {
      const ReprMatroid before(A);
      const ReprMatroid after(free_extension(A, X, "e"));
      const Mask e = after.mask_of("e");
      const Mask xm = after.mask_of(X);
      // Flats of the original matroid that span e must contain X.
      std::optional<LabelSet> bad;
      if (after.rank_of(xm | e) != after.rank_of(xm)) bad = X;
      for (Mask S = 0; !bad; ++S) {
        const LabelSet flat = before.labels_of(S);
        if (closure(before, flat) == flat) {
          const Mask sm = after.mask_of(flat);
          const bool spans_e = after.rank_of(sm | e) == after.rank_of(sm);
          const bool contains_x = (sm & xm) == xm;
          if (spans_e && !contains_x) bad = flat;
        }
        if (S == before.full_mask()) break;
      }
      if (!bad) {
        rec.pass();
        continue;
      }
      witness["extended"] = matroid_to_json(after);
      witness["flat"] = labels_to_json(*bad);
    } catch (const Error& e) {
      witness.update(error_witness(e));
    }
    rec.fail(std::move(witness));
  }
  return rec.finish();
}

// ---------------------------------------------------------------- perturbing the (c,d) entry

SuiteResult suite_relaxation(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec("relaxation", cfg.seed);
  std::size_t rejections = 0, redraws = 0;
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(case_seed(cfg.seed, 5, i));
    const Generated g = draw(GenKind::XFragile, rng, [](std::mt19937_64& r) {
      GenParams p;
      p.q = pick(r, 0, 1) ? 3 : 2;
      const unsigned n = pick(r, 2, 10);
      p.rows = pick(r, 1, n - 1);
      p.cols = n - p.rows;
      p.x_rows = 1;
      p.x_cols = 1;
      return p;
    }, redraws);
    rejections += g.rejections;
    const LabeledMatrix& A1 = g.instance.matroid.rep();
    rec.saw_size(g.instance.matroid.size());
    const Label c = "r1", d = "s1";
    json witness = {{"case", i}, {"instance", instance_to_json(g.instance)}};
    try {
      const Field F2 = extend_field(A1.field(), 2);
      const LabeledMatrix L1 = lift(A1, F2);
      const LabeledMatrix A2 = set_entry(L1, c, d, F2.generator());
      const ReprMatroid m1(A1), m2(A2);
      LabelSet H = set_minus(A1.row_set(), {c});
      H.insert(d);

      // (a) ranks of A1[Z] and A2[Z] differ exactly at Z = {c,d}.
      json differing = json::array();
      const ReprMatroid index(A1);
      for (Mask z = 0;; ++z) {
        const LabelSet Z = index.labels_of(z);
        if (rank(submatrix(L1, Z)) != rank(submatrix(A2, Z))) differing.push_back(labels_to_json(Z));
        if (z == index.full_mask()) break;
      }
      const bool only_cd = differing.size() == 1 && differing[0] == json({c, d});
      // (b) H is a circuit-hyperplane and E - H a cocircuit.
      const bool circuit_hyperplane = is_circuit_hyperplane(m1, H);
      const bool cocircuit = is_circuit(dual(m1), set_minus(m1.ground_set(), H));
      // (c) M2 relaxes H in M1; relax_entry must reach the same H.
      const bool relaxation = is_relaxation(m1, m2, H);
      const Relaxation rel = relax_entry(m1, set_minus(A1.row_set(), {c}), set_minus(A1.col_set(), {d}));
      const bool same_h = rel.hyperplane == H && equals(rel.m2, m2);
      if (only_cd && circuit_hyperplane && cocircuit && relaxation && same_h) {
        rec.pass();
        continue;
      }
      witness.update({{"rank_differences", differing}, {"circuit_hyperplane", circuit_hyperplane},
                      {"cocircuit", cocircuit}, {"relaxation", relaxation}, {"relax_entry_agrees", same_h},
                      {"H", labels_to_json(H)}});
    } catch (const Error& e) {
      witness.update(error_witness(e));
    }
    rec.fail(std::move(witness));
  }
  rec.report()["rejections"] = rejections;
  rec.report()["redraws"] = redraws;
  return rec.finish();
}

// ---------------------------------------------------------------- end to end

SuiteResult suite_pipeline(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec(cfg.conformance ? "pipeline_conformance" : "pipeline", cfg.seed);
  std::size_t rejections = 0, redraws = 0;
  json degrees = json::object();
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(case_seed(cfg.seed, 6, i));
    const Generated g = draw(GenKind::NFragile, rng, [](std::mt19937_64& r) {
      GenParams p;
      p.q = 2;
      p.minor_size = pick(r, 2, 3);
      const unsigned n = pick(r, p.minor_size + 1, 8);
      p.rows = pick(r, 1, n - 1);
      p.cols = n - p.rows;
      return p;
    }, redraws);
    rejections += g.rejections;
    const ReprMatroid& M = g.instance.matroid;
    const ReprMatroid& N = *g.instance.task->minor;
    rec.saw_size(M.size());
    json witness = {{"case", i}, {"instance", instance_to_json(g.instance)}};
    try {
      const ReductionTrace t = pipeline(M, N, {cfg.conformance, {}});
      const unsigned k = t.k, bound = 2 * k * k;
      const LabelSet X2 = set_minus(N.ground_set(), t.minor_basis);
      const bool identity = equals(minor(M, {t.minor_basis, X2}), minor(*t.m1, {{t.c}, {t.d}}));
      const bool relaxation = is_relaxation(*t.m1, *t.m2, t.hyperplane);
      const unsigned deg = t.m2->field().degree() / M.field().degree();
      const bool degree_ok = cfg.conformance ? deg == bound : bound % deg == 0;
      const std::string key = "k" + std::to_string(k) + "_deg" + std::to_string(deg);
      degrees[key] = degrees.value(key, 0) + 1;
      if (identity && relaxation && degree_ok && t.all_verdicts()) {
        rec.pass();
        continue;
      }
      witness.update({{"trace", trace_to_json(t)}, {"minor_identity", identity}, {"relaxation", relaxation},
                      {"degree", deg}, {"degree_ok", degree_ok}});
    } catch (const Error& e) {
      witness.update(error_witness(e));
    }
    rec.fail(std::move(witness));
  }
  rec.report()["rejections"] = rejections;
  rec.report()["redraws"] = redraws;
  rec.report()["degrees"] = degrees;
  rec.report()["conformance"] = cfg.conformance;
  return rec.finish();
}

// ---------------------------------------------------------------- structural invariants

namespace {

// Every (C, D) with C, D disjoint subsets of E, as a ternary counter.
std::vector<MinorSpec> all_minor_specs(const ReprMatroid& M) {
  std::vector<MinorSpec> out;
  const std::size_t n = M.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    MinorSpec s;
    std::size_t c = code;
    for (std::size_t g = 0; g < n; ++g, c /= 3) {
      if (c % 3 == 1) s.contract.insert(M.ground()[g]);
      if (c % 3 == 2) s.remove.insert(M.ground()[g]);
    }
    out.push_back(std::move(s));
  }
  return out;
}

std::optional<std::string> structural_violation(const ReprMatroid& M, std::mt19937_64& rng) {
  const auto r = rank_table(M);
  const Mask full = M.full_mask();
  if (r[0] != 0) return "normalization";
  for (Mask X = 0; X <= full; ++X) {
    for (std::size_t g = 0; g < M.size(); ++g) {
      const Mask e = Mask{1} << g;
      if (!(X & e) && (r[X | e] < r[X] || r[X | e] > r[X] + 1)) return "unit increase";
    }
    for (Mask Y = 0; Y <= full; ++Y)
      if (r[X | Y] + r[X & Y] > r[X] + r[Y]) return "submodularity";
  }

  const ReprMatroid D = dual(M);
  if (!equals(dual(D), M)) return "dual involution";
  for (Mask X = 0; X <= full; ++X)
    if (D.rank_of(X) + r[full] != static_cast<std::size_t>(std::popcount(X)) + r[full & ~X])
      return "dual corank formula";

  for (const auto& spec : all_minor_specs(M)) {
    const ReprMatroid m = minor(M, spec);
    const Mask C = M.mask_of(spec.contract);
    for (Mask y = 0; y <= m.full_mask(); ++y) {
      const Mask X = M.mask_of(m.labels_of(y));
      if (m.rank_of(y) != static_cast<std::size_t>(r[X | C] - r[C])) return "minor rank identity";
      if (y == m.full_mask()) break;
    }
    if (!equals(dual(m), minor(D, {spec.remove, spec.contract}))) return "minor/dual commutation";
  }

  // Fragility transports through duality, on displayed minors and on
  // minors by random partitions.
  for (int t = 0; t < 6; ++t) {
    MinorSpec spec;
    for (const auto& l : M.ground()) {
      const unsigned roll = pick(rng, 0, 2);
      if (roll == 1) spec.contract.insert(l);
      if (roll == 2) spec.remove.insert(l);
    }
    ReprMatroid N = minor(M, spec);
    if (t % 2 == 0) {
      // Same ground set, but a displayed minor of the original representation.
      N = ReprMatroid(submatrix(M.rep(), N.ground_set()));
    }
    if (is_N_fragile(M, N) != is_N_fragile(D, dual(N))) return "fragility dualization";
  }
  return std::nullopt;
}

}  // namespace

SuiteResult suite_structural(const SuiteConfig& cfg, std::size_t count) {
  Recorder rec("structural", cfg.seed);
  for (std::size_t i = 0; i < count; ++i) {
    std::mt19937_64 rng(case_seed(cfg.seed, 7, i));
    const unsigned q = std::array{2u, 3u, 4u}[pick(rng, 0, 2)];
    const Field F = field_of_order(q);
    const unsigned n = pick(rng, 1, 7);
    const unsigned rows = pick(rng, 0, n);
    std::vector<Label> rl, cl;
    for (unsigned r = 0; r < rows; ++r) rl.push_back("r" + std::to_string(r + 1));
    for (unsigned c = 0; c < n - rows; ++c) cl.push_back("s" + std::to_string(c + 1));
    std::vector<Code> entries(rows * (n - rows));
    for (auto& e : entries) e = std::uniform_int_distribution<Code>(0, F.order() - 1)(rng);
    const ReprMatroid M(LabeledMatrix(F, rl, cl, std::move(entries)));
    rec.saw_size(n);
    if (auto bad = structural_violation(M, rng))
      rec.fail({{"case", i}, {"matroid", matroid_to_json(M)}, {"property", *bad}});
    else
      rec.pass();
  }
  return rec.finish();
}

std::vector<std::string> suite_names() {
  return {"field_core", "xfragile_converse", "zero_out", "free_extension", "relaxation", "pipeline", "structural"};
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  if (name == "field_core") return suite_field_core(cfg);
  if (name == "xfragile_converse") return suite_xfragile_converse(cfg);
  if (name == "zero_out") return suite_zero_out(cfg);
  if (name == "free_extension") return suite_free_extension(cfg);
  if (name == "relaxation") return suite_relaxation(cfg);
  if (name == "pipeline") return suite_pipeline(cfg);
  if (name == "structural") return suite_structural(cfg);
  throw Error(ErrorKind::InvalidArgs, "unknown suite '" + name + "'");
}

}  // namespace matfrag
