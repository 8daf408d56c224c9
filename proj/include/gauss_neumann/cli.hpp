#pragma once

#include <iosfwd>
#include <string>

namespace gauss_neumann::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kSolverFailure = 2, kVerificationFailure = 3 };

/// Build identifier stamped into every output row.
std::string build_id();

/// Entry point of the gauss-neumann command line tool.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

} // namespace gauss_neumann::cli
