#pragma once

#include "run_config.hpp"

namespace bcnd::cli {

// Exit codes: 0 ok, 1 suite failure, 2 config error, 3 runtime/integration
// failure.
int cmd_verify(const RunConfig& cfg);
int cmd_simulate(const RunConfig& cfg);
int cmd_limits(const RunConfig& cfg);
int cmd_scan(const RunConfig& cfg);

}  // namespace bcnd::cli
