#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace superselect::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitSuperselection = 2;

/// Runs the command line `args` (without the program name). Human-readable
/// output, or the JSON report with --json, goes to `out`; diagnostics go to
/// `err`. Returns 0 on success, 2 when a state violates superselection and
/// 1 on usage, IO or schema errors.
int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err);

}  // namespace superselect::cli
