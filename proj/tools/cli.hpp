#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace relphase::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInvalidInput = 2,
  kUndefinedPhase = 3,
  kInternal = 4,
};

/// Runs the relphase command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Parses "<a>pi", "pi" or a plain decimal into radians.
double parse_angle(const std::string& text);

}  // namespace relphase::cli
