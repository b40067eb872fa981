#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace parikh::cli {

/// Exit statuses of run_command.
enum Status : int {
    computed = 0,
    internal_failure = 1,
    usage_error = 2,
    resource_guard = 3,
};

/// Runs one command line (without the program name), writing results to
/// @p out and diagnostics to @p err.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace parikh::cli
