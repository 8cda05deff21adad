// matfrag: batch front end over instance files.
//
// Exit codes: 0 when every verdict of the command is positive (a predicate
// check that ran to completion counts as positive even if the predicate is
// false), 1 when a certified property fails (the report then carries the
// witness), 2 on invalid input.

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "matfrag/generate.hpp"
#include "matfrag/suites.hpp"

using namespace matfrag;

namespace {

constexpr int kOk = 0;
constexpr int kPropertyFailed = 1;
constexpr int kInvalidInput = 2;

struct Options {
  std::string input;
  std::string report;
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::size_t max_ground = kDefaultMaxGround;
  bool conformance = false;
};

class Timer {
 public:
  double millis() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0_).count();
  }

 private:
  std::chrono::steady_clock::time_point t0_ = std::chrono::steady_clock::now();
};

void emit(const Options& opt, const json& report) {
  const std::string text = canonical_dump(report);
  if (opt.report.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.report);
  if (!out) throw Error(ErrorKind::InvalidArgs, "cannot write report to " + opt.report);
  out << text;
}

InstanceFile load(const Options& opt) {
  if (opt.input.empty()) throw Error(ErrorKind::InvalidArgs, "--input is required");
  std::ifstream in(opt.input);
  if (!in) throw Error(ErrorKind::InvalidArgs, "cannot read " + opt.input);
  std::stringstream buf;
  buf << in.rdbuf();
  InstanceFile inst = parse_instance(buf.str());
  if (inst.matroid.size() > opt.max_ground)
    throw Error(ErrorKind::CapExceeded, std::to_string(inst.matroid.size()) + " elements exceed --max-ground " +
                                            std::to_string(opt.max_ground));
  return inst;
}

const Task& require_task(const InstanceFile& inst, std::initializer_list<TaskKind> kinds) {
  if (inst.task)
    for (TaskKind k : kinds)
      if (inst.task->kind == k) return *inst.task;
  std::string names;
  for (TaskKind k : kinds) names += (names.empty() ? "" : " or ") + std::string(to_string(k));
  throw Error(ErrorKind::SchemaViolation, "$.task: this command needs a task of type " + names);
}

json base_report(const std::string& command, const Options& opt, const InstanceFile* inst) {
  json r = {{"command", command}};
  if (inst) {
    r["instance"] = instance_to_json(*inst);
    r["seed"] = opt.seed_given ? opt.seed : inst->seed.value_or(opt.seed);
  } else {
    r["seed"] = opt.seed;
  }
  return r;
}

json spec_to_json(const MinorSpec& s) {
  return {{"contract", labels_to_json(s.contract)}, {"delete", labels_to_json(s.remove)}};
}

int cmd_check_xfragile(const Options& opt) {
  Timer timer;
  const InstanceFile inst = load(opt);
  const Task& task = require_task(inst, {TaskKind::XFragile});
  const XFragileVerdict v = check_X_fragile_matrix(inst.matroid.rep(), task.X);
  json r = base_report("check-xfragile", opt, &inst);
  r["verdicts"] = {{"x_fragile", v.fragile}};
  if (v.witness) r["witness"] = {{"Y", labels_to_json(*v.witness)}, {"failure", v.failure}};
  r["timing_ms"] = timer.millis();
  emit(opt, r);
  return kOk;
}

int cmd_check_nfragile(const Options& opt) {
  Timer timer;
  const InstanceFile inst = load(opt);
  const Task& task = require_task(inst, {TaskKind::NFragile, TaskKind::Pipeline});
  const auto parts = fragile_partitions(inst.matroid, *task.minor);
  json r = base_report("check-nfragile", opt, &inst);
  r["verdicts"] = {{"n_fragile", parts.size() == 1}, {"is_minor", !parts.empty()}};
  json specs = json::array();
  for (const auto& s : parts) specs.push_back(spec_to_json(s));
  r["witness"] = {{"partitions", specs}};
  r["timing_ms"] = timer.millis();
  emit(opt, r);
  return kOk;
}

int cmd_relax(const Options& opt) {
  Timer timer;
  const InstanceFile inst = load(opt);
  const Task& task = require_task(inst, {TaskKind::Relax});
  const Relaxation rel = relax_entry(inst.matroid, task.C, task.D);
  json r = base_report("relax", opt, &inst);
  r["verdicts"] = {{"relaxation", is_relaxation(rel.m1, rel.m2, rel.hyperplane)},
                   {"circuit_hyperplane", is_circuit_hyperplane(rel.m1, rel.hyperplane)}};
  r["witness"] = {{"H", labels_to_json(rel.hyperplane)},
                  {"c", rel.c},
                  {"d", rel.d},
                  {"theta", rel.theta.code()},
                  {"M1", matroid_to_json(rel.m1)},
                  {"M2", matroid_to_json(rel.m2)}};
  json diffs = json::array();
  for (const auto& Z : rank_differences(lift(rel.m1.rep(), rel.m2.field()), rel.m2.rep()))
    diffs.push_back(labels_to_json(Z));
  r["witness"]["Z"] = diffs;
  r["timing_ms"] = timer.millis();
  emit(opt, r);
  return r["verdicts"]["relaxation"].get<bool>() ? kOk : kPropertyFailed;
}

int cmd_pipeline(const Options& opt) {
  Timer timer;
  const InstanceFile inst = load(opt);
  const Task& task = require_task(inst, {TaskKind::Pipeline, TaskKind::NFragile});
  const ReductionTrace t = pipeline(inst.matroid, *task.minor, {opt.conformance, {}});
  json r = base_report("pipeline", opt, &inst);
  json verdicts = json::object();
  for (const auto& s : t.stages)
    for (const auto& [name, ok] : s.verdicts) verdicts[s.name + "." + name] = ok;
  r["verdicts"] = verdicts;
  r["witness"] = {{"H", labels_to_json(t.hyperplane)}, {"final_degree", t.final_degree}};
  r["trace"] = trace_to_json(t);
  r["timing_ms"] = timer.millis();
  emit(opt, r);
  return t.all_verdicts() ? kOk : kPropertyFailed;
}

int cmd_verify_suite(const Options& opt, const std::vector<std::string>& names) {
  Timer timer;
  SuiteConfig cfg{opt.seed, opt.conformance, opt.max_ground};
  const std::vector<std::string> chosen = names.empty() ? suite_names() : names;
  json r = base_report("verify-suite", opt, nullptr);
  r["conformance"] = opt.conformance;
  json verdicts = json::object(), suites = json::object();
  bool all = true;
  for (const auto& name : chosen) {
    SuiteResult res = run_suite(name, cfg);
    verdicts[name] = res.ok();
    all = all && res.ok();
    suites[name] = std::move(res.report);
    std::cerr << name << ": " << res.passed << "/" << res.cases << "\n";
  }
  r["verdicts"] = verdicts;
  r["suites"] = suites;
  r["timing_ms"] = timer.millis();
  emit(opt, r);
  return all ? kOk : kPropertyFailed;
}

int cmd_gen(const Options& opt, const std::string& kind, GenParams params) {
  params.seed = opt.seed;
  params.max_ground = opt.max_ground;
  const Generated g = gen_random(kind == "xfragile" ? GenKind::XFragile : GenKind::NFragile, params);
  std::cerr << "rejections: " << g.rejections << "\n";
  emit(opt, instance_to_json(g.instance));
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Fragility certification for represented matroids"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    auto* in = sub->add_option("--input", opt.input, "instance JSON file");
    if (needs_input) in->required();
    sub->add_option("--report", opt.report, "write the report here instead of stdout");
    sub->add_option("--seed", opt.seed, "seed (defaults to the instance seed, else 1)")
        ->each([&](const std::string&) { opt.seed_given = true; });
    sub->add_option("--max-ground", opt.max_ground, "ground-set cap")->capture_default_str();
    sub->add_flag("--conformance", opt.conformance, "lift pipeline outputs to exactly degree 2k^2");
  };

  auto* xf = app.add_subcommand("check-xfragile", "is the matrix X-fragile for the task's X");
  auto* nf = app.add_subcommand("check-nfragile", "is the matroid N-fragile for the task's minor");
  auto* rl = app.add_subcommand("relax", "perturb the (c,d) entry for the task's C, D");
  auto* pl = app.add_subcommand("pipeline", "run the full reduction on the task's minor");
  auto* vs = app.add_subcommand("verify-suite", "run seeded certification suites");
  auto* gn = app.add_subcommand("gen", "sample a random accepted instance");
  for (auto* sub : {xf, nf, rl, pl}) add_common(sub, true);
  add_common(vs, false);
  add_common(gn, false);

  std::vector<std::string> suites;
  vs->add_option("suites", suites, "suite names (default: all)")->check(CLI::IsMember(suite_names()));

  std::string kind = "xfragile";
  GenParams params;
  gn->add_option("--kind", kind)->check(CLI::IsMember({"xfragile", "nfragile"}))->capture_default_str();
  gn->add_option("--q", params.q)->capture_default_str();
  gn->add_option("--rows", params.rows)->capture_default_str();
  gn->add_option("--cols", params.cols)->capture_default_str();
  gn->add_option("--x-rows", params.x_rows)->capture_default_str();
  gn->add_option("--x-cols", params.x_cols)->capture_default_str();
  gn->add_option("--minor-size", params.minor_size)->capture_default_str();
  gn->add_option("--max-attempts", params.max_attempts)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalidInput;
  }

  try {
    if (*xf) return cmd_check_xfragile(opt);
    if (*nf) return cmd_check_nfragile(opt);
    if (*rl) return cmd_relax(opt);
    if (*pl) return cmd_pipeline(opt);
    if (*vs) return cmd_verify_suite(opt, suites);
    if (*gn) return cmd_gen(opt, kind, params);
  } catch (const Error& e) {
    const bool property = e.kind() == ErrorKind::PostconditionViolation;
    json r = {{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (property && !opt.input.empty()) {
      try {
        r["instance"] = instance_to_json(load(opt));
      } catch (const Error&) {
      }
    }
    std::cerr << "matfrag: " << e.what() << "\n";
    try {
      emit(opt, r);
    } catch (const Error&) {
    }
    return property ? kPropertyFailed : kInvalidInput;
  }
  return kInvalidInput;
}
