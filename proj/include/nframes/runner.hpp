#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "nframes/config.hpp"

namespace nframes {

/// Outcome of executing a config: the serialized report (pretty JSON with a
/// trailing newline; byte-identical for identical config + seed) and the
/// aggregate check verdict.
struct RunOutcome {
  std::string report_text;
  bool all_checks_passed = false;
};

/// Executes the configured operations in order. Frame-theoretic failures
/// (singular frames, broken dualities) are recorded in the report as failed
/// checks; malformed inputs throw InputError / DegenerateAnchorError.
RunOutcome run_experiment(const ExperimentConfig& config,
                          std::optional<uint64_t> seed_override = {});

/// Renders the spectrum of the first operator-producing operation (bounds,
/// spectrum, transform, or tensor) as CSV: header `index,eigenvalue`, rows
/// ascending, 17 significant digits. Throws InputError when no operation
/// requests an operator.
std::string spectrum_csv(const ExperimentConfig& config,
                         std::optional<uint64_t> seed_override = {});

} // namespace nframes
