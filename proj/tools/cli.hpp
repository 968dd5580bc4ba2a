#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace gridmotif::cli {

// Exit codes: 0 success, 1 validation or usage error, 2 I/O error.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 1;
inline constexpr int kExitIo = 2;

// args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gridmotif::cli
