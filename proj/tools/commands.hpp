#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace mres::cli {

/// Exit codes: 0 success, 1 check failure, 2 usage or I/O error.
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;

/// Runs one command; `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err);

}  // namespace mres::cli
