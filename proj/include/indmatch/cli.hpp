#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace indmatch::cli {

/// Runs one subcommand. `args` excludes the program name.
/// Returns 0 on success, 1 on a domain, parse, validation or I/O error (an error
/// record is written to `err` as one JSON line) or a failed verification, and 2
/// on a usage error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace indmatch::cli
