#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace trigbound::cli {

enum ExitCode : int {
  kOk = 0,
  kNotCertified = 1,
  kUsage = 2,
  kNumerical = 3,
};

// Runs one command line. args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace trigbound::cli
