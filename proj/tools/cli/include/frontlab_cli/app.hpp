#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace frontlab::cli {

/// Parses argv, runs one subcommand and returns the process exit status:
/// 0 on success, 1 on a domain error, 2 on numerical, I/O or config failure.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace frontlab::cli
