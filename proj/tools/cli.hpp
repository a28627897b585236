#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace djcm::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitValidationFailed = 1;
inline constexpr int kExitBadInput = 2;

/// Runs the `djcm` command line. `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace djcm::cli
