#pragma once

#include <string>
#include <vector>

namespace coarma {

/// CLI entry point.  Exit codes: 0 ok, 2 parse error, 3 numeric error,
/// 4 I/O error.
int run_cli(const std::vector<std::string>& args);
int run_cli(int argc, char** argv);

}  // namespace coarma
