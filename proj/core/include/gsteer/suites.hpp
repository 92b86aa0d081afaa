#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "gsteer/tolerances.hpp"

namespace gsteer::suites {

struct SuiteConfig {
  std::uint64_t seed = 20141218;
  /// Base trial count; suites that need 10^4 samples use 10 * trials.
  std::size_t trials = 1000;
  /// Monte Carlo samples per state for the Reid oracle.
  std::size_t samples = 1000000;
  std::size_t oracle_states = 20;
  Tolerances tol{};
};

struct SuiteResult {
  std::string name;
  bool passed = true;
  std::size_t trials = 0;
  std::size_t violations = 0;
  double worst = 0.0;  ///< largest deviation seen (suite-specific meaning)
  std::string detail;
  double seconds = 0.0;
};

SuiteResult ppt_implies_nonsteerable(const SuiteConfig& cfg);
SuiteResult monotonicity(const SuiteConfig& cfg);
SuiteResult additivity(const SuiteConfig& cfg);
SuiteResult local_invariance(const SuiteConfig& cfg);
SuiteResult single_mode_formula(const SuiteConfig& cfg);
SuiteResult pure_state_hierarchy(const SuiteConfig& cfg);
SuiteResult convexity(const SuiteConfig& cfg);
SuiteResult two_mode_bounds(const SuiteConfig& cfg);
SuiteResult threshold_consistency(const SuiteConfig& cfg);
SuiteResult key_rate_consistency(const SuiteConfig& cfg);
SuiteResult measurement_ordering(const SuiteConfig& cfg);
SuiteResult bona_fide_equivalence(const SuiteConfig& cfg);
SuiteResult eigen_crosscheck(const SuiteConfig& cfg);
SuiteResult reid_oracle(const SuiteConfig& cfg);

std::vector<SuiteResult> run_all(const SuiteConfig& cfg);

nlohmann::json to_json(const SuiteResult& r);
nlohmann::json summary_json(const std::vector<SuiteResult>& results, const SuiteConfig& cfg);

}  // namespace gsteer::suites
