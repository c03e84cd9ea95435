#pragma once

/**
 * @file cli.hpp
 * @brief Command-line front end. Subcommands bracket, jacobi, skew,
 *        generators, module-check, classify, involution-check, unitary.
 *
 * Every run that gets past argument parsing prints one JSON report with keys
 * in alphabetical order and scalars in the textual format:
 *
 *   command, params, window, status (pass | fail | infeasible),
 *   violations [{indices, lhs, relation, rhs}], derived, notes
 *
 * Exit status 0 on pass, 1 on fail or infeasible, 2 on a usage or input
 * error (message on `err`, no report).
 */

#include <iosfwd>
#include <string>
#include <vector>

namespace superw::cli {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace superw::cli
