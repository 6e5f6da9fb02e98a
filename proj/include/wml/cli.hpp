#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace wml {

// Exit codes.
inline constexpr int exit_ok = 0;
inline constexpr int exit_verification_failed = 1;
inline constexpr int exit_usage = 2;

// args excludes the program name. Reports go to `out` unless --out is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

} // namespace wml
