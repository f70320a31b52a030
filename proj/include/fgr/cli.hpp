#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace fgr {

// Subcommands gen, reduce, solve, verify, bench, estimate. args excludes the
// program name. Exit codes: 0 success, 1 verification failure or internal
// invariant violation, 2 usage or input error (usage text on err).
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fgr
