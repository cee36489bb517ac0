#pragma once

#include <iosfwd>

namespace jetgeom::cli {

enum ExitCode : int { kOk = 0, kBreach = 1, kConfigError = 2, kDomainError = 3 };

/// Entry point of the jetgeom command line; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace jetgeom::cli
