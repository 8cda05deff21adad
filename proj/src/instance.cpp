#include "matfrag/instance.hpp"

namespace matfrag {

std::string_view to_string(TaskKind kind) {
  switch (kind) {
    case TaskKind::XFragile: return "xfragile";
    case TaskKind::NFragile: return "nfragile";
    case TaskKind::Relax: return "relax";
    case TaskKind::Pipeline: return "pipeline";
  }
  return "unknown";
}

// ---------------------------------------------------------------- writing

json field_to_json(const Field& F) {
  json tower = json::array();
  for (const auto& step : F.tower()) tower.push_back({{"deg", step.degree}, {"modulus", step.modulus}});
  return {{"p", F.characteristic()}, {"tower", tower}};
}

json matrix_to_json(const LabeledMatrix& A) {
  json entries = json::array();
  for (std::size_t i = 0; i < A.row_count(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < A.col_count(); ++j) row.push_back(A.at(i, j));
    entries.push_back(std::move(row));
  }
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", entries}};
}

json matroid_to_json(const ReprMatroid& M) {
  return {{"field", field_to_json(M.field())}, {"matrix", matrix_to_json(M.rep())}};
}

json labels_to_json(const LabelSet& labels) { return json(std::vector<Label>(labels.begin(), labels.end())); }

json instance_to_json(const InstanceFile& inst) {
  json j = matroid_to_json(inst.matroid);
  if (inst.task) {
    const Task& t = *inst.task;
    json task = {{"type", to_string(t.kind)}};
    switch (t.kind) {
      case TaskKind::XFragile: task["X"] = labels_to_json(t.X); break;
      case TaskKind::Relax:
        task["C"] = labels_to_json(t.C);
        task["D"] = labels_to_json(t.D);
        break;
      case TaskKind::NFragile:
      case TaskKind::Pipeline: task["minor"] = matroid_to_json(*t.minor); break;
    }
    j["task"] = std::move(task);
  }
  if (inst.seed) j["seed"] = *inst.seed;
  return j;
}

json trace_to_json(const ReductionTrace& trace) {
  json stages = json::array();
  for (const auto& s : trace.stages) {
    json matroids = json::object();
    for (const auto& [name, M] : s.matroids) matroids[name] = matroid_to_json(M);
    json verdicts = json::object();
    for (const auto& [name, ok] : s.verdicts) verdicts[name] = ok;
    stages.push_back({{"stage", s.name},
                      {"degree", s.degree},
                      {"matroids", matroids},
                      {"verdicts", verdicts},
                      {"timing_ms", s.millis}});
  }
  json j = {{"k", trace.k},
            {"input", matroid_to_json(trace.input)},
            {"minor", matroid_to_json(trace.minor)},
            {"display_basis", labels_to_json(trace.display_basis)},
            {"minor_basis", labels_to_json(trace.minor_basis)},
            {"c", trace.c},
            {"d", trace.d},
            {"H", labels_to_json(trace.hyperplane)},
            {"final_degree", trace.final_degree},
            {"degree_bound", 2 * trace.k * trace.k},
            {"conformance", trace.conformance},
            {"stages", stages}};
  if (trace.m1) j["M1"] = matroid_to_json(*trace.m1);
  if (trace.m2) j["M2"] = matroid_to_json(*trace.m2);
  return j;
}

std::string canonical_dump(const json& j) { return j.dump(2) + "\n"; }

std::string serialize_instance(const InstanceFile& inst) { return canonical_dump(instance_to_json(inst)); }

json strip_timing(const json& j) {
  if (j.is_object()) {
    json out = json::object();
    for (auto it = j.begin(); it != j.end(); ++it)
      if (it.key() != "timing_ms") out[it.key()] = strip_timing(it.value());
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& v : j) out.push_back(strip_timing(v));
    return out;
  }
  return j;
}

// ---------------------------------------------------------------- reading

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::SchemaViolation, path + ": " + what);
}

const json& member(const json& j, const std::string& path, const char* key) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path, std::string("missing member '") + key + "'");
  return *it;
}

std::uint64_t as_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
    schema(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

std::vector<Label> as_labels(const json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array of labels");
  std::vector<Label> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (!j[i].is_string()) schema(path + "[" + std::to_string(i) + "]", "expected a string label");
    out.push_back(j[i].get<std::string>());
  }
  return out;
}

LabelSet as_label_set(const json& j, const std::string& path) {
  auto v = as_labels(j, path);
  LabelSet out(v.begin(), v.end());
  if (out.size() != v.size()) schema(path, "duplicate label");
  return out;
}

Field field_from_json(const json& j, const std::string& path, const FieldLimits& limits) {
  const auto p = as_uint(member(j, path, "p"), path + ".p");
  std::vector<TowerStep> tower;
  if (j.contains("tower")) {
    const json& t = j["tower"];
    if (!t.is_array()) schema(path + ".tower", "expected an array");
    for (std::size_t i = 0; i < t.size(); ++i) {
      const std::string sp = path + ".tower[" + std::to_string(i) + "]";
      TowerStep step;
      step.degree = static_cast<unsigned>(as_uint(member(t[i], sp, "deg"), sp + ".deg"));
      const json& m = member(t[i], sp, "modulus");
      if (!m.is_array()) schema(sp + ".modulus", "expected an array");
      for (std::size_t c = 0; c < m.size(); ++c)
        step.modulus.push_back(as_uint(m[c], sp + ".modulus[" + std::to_string(c) + "]"));
      tower.push_back(std::move(step));
    }
  }
  if (p > 65536) throw Error(ErrorKind::InvalidField, path + ".p: " + std::to_string(p) + " is too large");
  try {
    return Field::from_tower(static_cast<unsigned>(p), tower, limits);
  } catch (const Error& e) {
    throw Error(e.kind(), path + ": " + e.what());
  }
}

LabeledMatrix matrix_from_json(const json& j, const std::string& path, const Field& F) {
  auto rows = as_labels(member(j, path, "rows"), path + ".rows");
  auto cols = as_labels(member(j, path, "cols"), path + ".cols");
  const json& e = member(j, path, "entries");
  if (!e.is_array() || e.size() != rows.size()) schema(path + ".entries", "expected one array per row");
  std::vector<Code> entries;
  for (std::size_t i = 0; i < e.size(); ++i) {
    const std::string rp = path + ".entries[" + std::to_string(i) + "]";
    if (!e[i].is_array() || e[i].size() != cols.size()) schema(rp, "expected one entry per column");
    for (std::size_t c = 0; c < cols.size(); ++c) {
      const std::string cp = rp + "[" + std::to_string(c) + "]";
      const Code v = as_uint(e[i][c], cp);
      if (!F.contains(v)) schema(cp, std::to_string(v) + " is not an element of " + F.name());
      entries.push_back(v);
    }
  }
  try {
    return LabeledMatrix(F, std::move(rows), std::move(cols), std::move(entries));
  } catch (const Error& err) {
    schema(path, err.what());
  }
}

ReprMatroid matroid_from_json(const json& j, const std::string& path, const Field& default_field,
                              const FieldLimits& limits) {
  if (!j.is_object()) schema(path, "expected an object");
  const Field F = j.contains("field") ? field_from_json(j["field"], path + ".field", limits) : default_field;
  return ReprMatroid(matrix_from_json(member(j, path, "matrix"), path + ".matrix", F));
}

void require_labels(const LabelSet& labels, const ReprMatroid& M, const std::string& path) {
  for (const auto& l : labels)
    if (!M.ground_set().contains(l)) schema(path, "label '" + l + "' is not in the matrix");
}

}  // namespace

InstanceFile instance_from_json(const json& j, const FieldLimits& limits) {
  if (!j.is_object()) schema("$", "expected an object");
  const Field F = field_from_json(member(j, "$", "field"), "$.field", limits);
  InstanceFile inst{ReprMatroid(matrix_from_json(member(j, "$", "matrix"), "$.matrix", F)), std::nullopt,
                    std::nullopt};
  if (j.contains("seed")) inst.seed = as_uint(j["seed"], "$.seed");
  if (j.contains("task")) {
    const json& t = j["task"];
    const json& type = member(t, "$.task", "type");
    if (!type.is_string()) schema("$.task.type", "expected a string");
    const auto name = type.get<std::string>();
    Task task;
    if (name == "xfragile") {
      task.kind = TaskKind::XFragile;
      task.X = as_label_set(member(t, "$.task", "X"), "$.task.X");
      require_labels(task.X, inst.matroid, "$.task.X");
    } else if (name == "relax") {
      task.kind = TaskKind::Relax;
      task.C = as_label_set(member(t, "$.task", "C"), "$.task.C");
      task.D = as_label_set(member(t, "$.task", "D"), "$.task.D");
      require_labels(task.C, inst.matroid, "$.task.C");
      require_labels(task.D, inst.matroid, "$.task.D");
    } else if (name == "nfragile" || name == "pipeline") {
      task.kind = name == "nfragile" ? TaskKind::NFragile : TaskKind::Pipeline;
      task.minor = matroid_from_json(member(t, "$.task", "minor"), "$.task.minor", F, limits);
      require_labels(task.minor->ground_set(), inst.matroid, "$.task.minor");
    } else {
      schema("$.task.type", "unknown task type '" + name + "'");
    }
    inst.task = std::move(task);
  }
  return inst;
}

InstanceFile parse_instance(std::string_view text, const FieldLimits& limits) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedJson, e.what());
  }
  return instance_from_json(j, limits);
}

}  // namespace matfrag
