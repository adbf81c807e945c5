#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace hkfs::cli {

/// Runs one command line (without the program name). Returns the process
/// exit code: 0 ok, 1 usage or parse error, 2 domain error, 3 budget exceeded.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace hkfs::cli
