#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nframes {

/// One aggregated verdict inside a suite: worst-case residual over all
/// trials of one property, against its pinned tolerance.
struct SuiteCheck {
  std::string id;
  bool pass = false;
  double residual = 0.0;  ///< worst observed residual (property-specific)
  double tolerance = 0.0; ///< the pinned tolerance it was compared against
};

/// Outcome of one named theorem suite.
struct SuiteResult {
  std::string name;
  std::vector<SuiteCheck> checks;

  bool all_pass() const {
    for (const auto& check : checks) {
      if (!check.pass) return false;
    }
    return true;
  }
};

/// Names of all runnable theorem suites, in canonical order.
std::vector<std::string> suite_names();

/// Runs one suite (or "all") with the given base seed. Trials may be spread
/// over NFRAMES_THREADS workers; per-trial seeds and fixed-order reduction
/// keep the outcome independent of the thread count. Throws InputError for
/// unknown suite names.
std::vector<SuiteResult> run_suites(const std::string& name, uint64_t seed);

} // namespace nframes
