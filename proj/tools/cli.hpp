#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace loopkit::cli {

/// Runs one subcommand. Returns 0 on success, 1 when a requested verification fails and 2 on
/// input or spec errors.
int run(const std::vector<std::string> & args, std::ostream & out, std::ostream & err);

} // namespace loopkit::cli
