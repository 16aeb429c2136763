#pragma once

#include <ostream>

#include "gerstner/io.hpp"

namespace gerstner {

/// Process exit codes shared by every subcommand.
enum ExitCode : int { kExitPass = 0, kExitFailure = 1, kExitUsage = 2 };

// Each command writes its document to config.out (or `out` when empty) and
// diagnostics to `err`, and returns an ExitCode.
int cmd_speed(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_profile(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_field(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_trace(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace gerstner
