#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetagraph::cli {

enum ExitCode : int {
    success = 0,
    validation_failure = 1,
    route_disagreement = 2,
    io_or_parse_error = 3,
    resource_cap = 4,
};

/// Runs one subcommand. args excludes the program name. Data goes to out,
/// diagnostics to err.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetagraph::cli
