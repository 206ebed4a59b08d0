#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace cohcorr::cli {

// Subcommands: report, sweep, evolve, verify. Returns the process exit code:
// 0 on success, 1 when verify finds a violation, 2 on bad input.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace cohcorr::cli
