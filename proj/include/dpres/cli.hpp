#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace dpres::cli {

/// Runs one subcommand. argv[0] is the program name. Reports go to `out`,
/// diagnostics and usage text to `err`. Returns 0 on pass, 1 on a failed
/// check and 2 on usage or input errors.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace dpres::cli
