#pragma once

// JSON instance files and reports.
//
//   {"field":  {"p": 2, "tower": [{"deg": 2, "modulus": [1, 1, 1]}]},
//    "matrix": {"rows": ["c"], "cols": ["d", "e"], "entries": [[0, 1]]},
//    "task":   {"type": "xfragile", "X": ["c", "d"]},
//    "seed":   7}
//
// Task types: xfragile {X}, nfragile {minor}, relax {C, D}, pipeline
// {minor}.  A minor is a matroid block {"field"?, "matrix"}; its field
// defaults to the instance field.  Field elements are integer codes.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "matfrag/reductions.hpp"

namespace matfrag {

using json = nlohmann::json;

enum class TaskKind { XFragile, NFragile, Relax, Pipeline };

std::string_view to_string(TaskKind kind);

struct Task {
  TaskKind kind = TaskKind::XFragile;
  LabelSet X;                        // xfragile
  std::optional<ReprMatroid> minor;  // nfragile, pipeline
  LabelSet C;                        // relax
  LabelSet D;                        // relax
};

struct InstanceFile {
  ReprMatroid matroid;
  std::optional<Task> task;
  std::optional<std::uint64_t> seed;
};

json field_to_json(const Field& F);
json matrix_to_json(const LabeledMatrix& A);
json matroid_to_json(const ReprMatroid& M);
json labels_to_json(const LabelSet& labels);
json instance_to_json(const InstanceFile& inst);
json trace_to_json(const ReductionTrace& trace);

// Throws MalformedJson, SchemaViolation (with a $.path prefix) or
// InvalidField.
InstanceFile parse_instance(std::string_view text, const FieldLimits& limits = {});
InstanceFile instance_from_json(const json& j, const FieldLimits& limits = {});

// Canonical text: sorted keys, two-space indent, trailing newline.
std::string serialize_instance(const InstanceFile& inst);
std::string canonical_dump(const json& j);

// Copy of j without any "timing_ms" members.
json strip_timing(const json& j);

}  // namespace matfrag
