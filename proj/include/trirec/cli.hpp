#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace trirec {

/// Runs one command line (without the program name). Returns 0 on success,
/// 1 on a domain error (error name on `err`), 2 on a usage error.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Index above which bench refuses the exact ring without --force.
inline constexpr long kBignumGuardIndex = 1'000'000;

}  // namespace trirec
