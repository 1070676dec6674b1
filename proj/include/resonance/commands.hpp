#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "resonance/config.hpp"

namespace resonance {

enum ExitCode : int {
  kExitOk = 0,
  kExitInvalidConfig = 1,
  kExitComputation = 2,
  kExitComparison = 3,
};

const std::vector<std::string>& command_names();

/// Runs one of validate, zeta-grid, resonances, lengths, compare. Data goes
/// to output.path, or to `out` when it is "-"; diagnostics go to `err`.
int run(const std::string& command, const ConfigEntries& entries, std::ostream& out,
        std::ostream& err);

/// Applies RESONANCE_THREADS (0 or unset: OpenMP default).
void apply_thread_limit();

}  // namespace resonance
