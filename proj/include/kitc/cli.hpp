#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace kitc::cli {

/// Parses `args` (without the program name) and runs the selected
/// subcommand: generate, run, compare or sweep.
/// Returns 0 on success, 2 on invalid flags or parameters, 1 on runtime errors.
int parse_and_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "a:b:step" (inclusive), "a:b" (step 1) or "v1,v2,..." -> values.
/// Throws std::invalid_argument on malformed input.
std::vector<double> parse_range(const std::string& text);

}  // namespace kitc::cli
