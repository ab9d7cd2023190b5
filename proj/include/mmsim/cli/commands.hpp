#pragma once

#include <iosfwd>

namespace mmsim::cli {

/// Exit codes shared by every subcommand.
enum ExitCode : int {
    kOk = 0,
    kFailure = 1,
    kInputError = 2,     ///< bad arguments, config, parse error, dimension mismatch
    kNotConverged = 3,   ///< fit written but the optimizer hit its cap
    kUnstable = 4,       ///< stability refusal or explosion
};

/// Entry point of the `mmsim` tool: simulate, fit, diagnose, replay, ingest.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace mmsim::cli
