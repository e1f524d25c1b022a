#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace morse_gpe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitArgument = 2;
inline constexpr int kExitConvergence = 3;

// Runs one subcommand. `args` excludes the program name.
//
//   potential | solve | critical | sweep-g | sweep-k | density |
//   oracle-grid | oracle-pde | report
//
// Results go to `out` unless --output-path (or MORSE_GPE_OUT) names a
// directory, in which case <subcommand>.<csv|json|md> is written there.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Parses "start:stop:step" (inclusive), "a,b,c" or a single number.
std::vector<double> parse_values(const std::string& spec);

}  // namespace morse_gpe::cli
