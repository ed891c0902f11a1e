#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace csf::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitDomain = 1;
inline constexpr int kExitUsage = 2;

// Runs one subcommand. args excludes the program name. Primary output goes to `out`,
// diagnostics to `err`. Returns 0 on success, 1 on a domain error, 2 on a usage error.
int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace csf::cli
