#include "doctest.h"
#include "matfrag/generate.hpp"
#include "matfrag/instance.hpp"
#include "oracles.hpp"

using namespace matfrag;

namespace {

const char* kMinimal = R"({
  "field": {"p": 2, "tower": []},
  "matrix": {"rows": ["c"], "cols": ["d", "e"], "entries": [[0, 1]]},
  "task": {"type": "xfragile", "X": ["c", "d"]},
  "seed": 7
})";

std::string with_field(const std::string& field) {
  return R"({"field": )" + field + R"(, "matrix": {"rows": ["c"], "cols": ["d"], "entries": [[1]]}})";
}

}  // namespace

TEST_CASE("parse and serialize round-trip") {
  const InstanceFile inst = parse_instance(kMinimal);
  CHECK(inst.matroid.ground() == std::vector<Label>{"c", "d", "e"});
  REQUIRE(inst.task);
  CHECK(inst.task->kind == TaskKind::XFragile);
  CHECK(inst.task->X == LabelSet{"c", "d"});
  CHECK(inst.seed == 7u);
  const std::string text = serialize_instance(inst);
  CHECK(serialize_instance(parse_instance(text)) == text);
  CHECK(json::parse(text) == json::parse(kMinimal));
}

TEST_CASE("extension fields in instance files") {
  const InstanceFile inst = parse_instance(with_field(R"({"p": 2, "tower": [{"deg": 2, "modulus": [1, 1, 1]}]})"));
  CHECK(inst.matroid.field().order() == 4);
  CHECK(serialize_instance(parse_instance(serialize_instance(inst))) == serialize_instance(inst));
  CHECK_THROWS_WITH_AS(parse_instance(with_field(R"({"p": 2, "tower": [{"deg": 2, "modulus": [1, 0, 1]}]})")),
                       doctest::Contains("[1,0,1]"), Error);
  try {
    parse_instance(with_field(R"({"p": 2, "tower": [{"deg": 2, "modulus": [1, 0, 1]}]})"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidField);
    CHECK(std::string(e.what()).find("$.field") != std::string::npos);
  }
  CHECK_THROWS_WITH_AS(parse_instance(with_field(R"({"p": 6})")), doctest::Contains("InvalidField"), Error);
}

TEST_CASE("schema violations carry a path") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_instance(text);
    } catch (const Error& e) {
      return std::make_pair(e.kind(), std::string(e.what()));
    }
    return std::make_pair(ErrorKind::Exhausted, std::string("parsed"));
  };
  auto [k1, m1] = kind_of("{bad json");
  CHECK(k1 == ErrorKind::MalformedJson);
  auto [k2, m2] = kind_of(R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["c"], "entries": [[0]]}})");
  CHECK(k2 == ErrorKind::SchemaViolation);
  CHECK(m2.find("$.matrix") != std::string::npos);
  auto [k3, m3] = kind_of(R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["d"], "entries": [[0, 1]]}})");
  CHECK(k3 == ErrorKind::SchemaViolation);
  CHECK(m3.find("$.matrix.entries[0]") != std::string::npos);
  auto [k4, m4] = kind_of(R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["d"], "entries": [[3]]}})");
  CHECK(k4 == ErrorKind::SchemaViolation);
  CHECK(m4.find("$.matrix.entries[0][0]") != std::string::npos);
  auto [k5, m5] = kind_of(
      R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["d"], "entries": [[0]]},
          "task": {"type": "xfragile", "X": ["q"]}})");
  CHECK(k5 == ErrorKind::SchemaViolation);
  CHECK(m5.find("$.task.X") != std::string::npos);
  auto [k6, m6] = kind_of(R"({"matrix": {}})");
  CHECK(k6 == ErrorKind::SchemaViolation);
  CHECK(m6.find("field") != std::string::npos);
  auto [k7, m7] = kind_of(
      R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["d"], "entries": [[0]]},
          "task": {"type": "teleport"}})");
  CHECK(k7 == ErrorKind::SchemaViolation);
}

TEST_CASE("task blocks") {
  const InstanceFile relax = parse_instance(
      R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["d", "e"], "entries": [[0, 1]]},
          "task": {"type": "relax", "C": [], "D": ["e"]}})");
  CHECK(relax.task->kind == TaskKind::Relax);
  CHECK(relax.task->D == LabelSet{"e"});
  const InstanceFile pipe = parse_instance(
      R"({"field": {"p": 2}, "matrix": {"rows": ["c"], "cols": ["d", "e"], "entries": [[0, 1]]},
          "task": {"type": "pipeline", "minor": {"matrix": {"rows": ["c"], "cols": ["d"], "entries": [[0]]}}}})");
  REQUIRE(pipe.task->minor);
  CHECK(pipe.task->minor->field() == pipe.matroid.field());
  CHECK(equals(*pipe.task->minor, isolated({"c"}, {"c", "d"})));
  const json round = instance_to_json(pipe);
  CHECK(round["task"]["minor"]["matrix"]["rows"] == json({"c"}));
}

TEST_CASE("strip_timing removes nested timings only") {
  const json j = {{"a", 1}, {"timing_ms", 3.5}, {"b", {{"timing_ms", 2}, {"c", json::array({json{{"timing_ms", 1}}})}}}};
  CHECK(strip_timing(j) == json({{"a", 1}, {"b", {{"c", json::array({json::object()})}}}}));
}

TEST_CASE("random generation") {
  GenParams p;
  p.q = 2;
  p.rows = 2;
  p.cols = 3;
  p.x_rows = 1;
  p.x_cols = 1;
  p.seed = 7;
  const Generated g = gen_random(GenKind::XFragile, p);
  REQUIRE(g.instance.task);
  CHECK(g.instance.task->X.size() == 2);
  CHECK(is_X_fragile_matrix(g.instance.matroid.rep(), g.instance.task->X));
  CHECK(oracle::x_fragile(g.instance.matroid.rep(), g.instance.task->X));
  CHECK(serialize_instance(gen_random(GenKind::XFragile, p).instance) == serialize_instance(g.instance));
  p.seed = 8;
  const Generated other = gen_random(GenKind::XFragile, p);
  CHECK(is_X_fragile_matrix(other.instance.matroid.rep(), other.instance.task->X));

  GenParams n;
  n.q = 3;
  n.rows = 2;
  n.cols = 3;
  n.minor_size = 2;
  n.seed = 3;
  const Generated h = gen_random(GenKind::NFragile, n);
  REQUIRE(h.instance.task->minor);
  CHECK(is_N_fragile(h.instance.matroid, *h.instance.task->minor));
  CHECK(serialize_instance(gen_random(GenKind::NFragile, n).instance) == serialize_instance(h.instance));

  GenParams big = p;
  big.rows = 10;
  big.cols = 10;
  CHECK_THROWS_WITH_AS(gen_random(GenKind::XFragile, big), doctest::Contains("CapExceeded"), Error);
  // With X empty every nonempty Y fails, so sampling can never succeed.
  GenParams hopeless = p;
  hopeless.x_rows = 0;
  hopeless.x_cols = 0;
  hopeless.max_attempts = 50;
  CHECK_THROWS_WITH_AS(gen_random(GenKind::XFragile, hopeless), doctest::Contains("Exhausted"), Error);
}
