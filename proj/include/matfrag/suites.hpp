#pragma once

// Seeded certification suites.  Each case draws its instance from a seed
// derived from (suite seed, case index), runs the construction under test,
// and rechecks the claimed property by brute force.  Failing cases carry a
// full witness.

#include <cstdint>
#include <string>
#include <vector>

#include "matfrag/instance.hpp"

namespace matfrag {

struct SuiteResult {
  std::string name;
  std::size_t cases = 0;
  std::size_t passed = 0;
  double millis = 0;
  json report;  // includes "failures"; timings only under "timing_ms"

  bool ok() const { return cases > 0 && passed == cases; }
};

struct SuiteConfig {
  std::uint64_t seed = 1;
  bool conformance = false;
  std::size_t max_ground = kDefaultMaxGround;
};

SuiteResult suite_field_core(const SuiteConfig& cfg);
SuiteResult suite_xfragile_converse(const SuiteConfig& cfg, std::size_t count = 200);
SuiteResult suite_zero_out(const SuiteConfig& cfg, std::size_t count = 100);
SuiteResult suite_free_extension(const SuiteConfig& cfg, std::size_t count = 100);
SuiteResult suite_relaxation(const SuiteConfig& cfg, std::size_t count = 100);
SuiteResult suite_pipeline(const SuiteConfig& cfg, std::size_t count = 50);
SuiteResult suite_structural(const SuiteConfig& cfg, std::size_t count = 50);

std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace matfrag
