#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace anosov::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
/// An analyzer found an obstruction or contradiction, or a verifier failed.
inline constexpr int kExitFinding = 2;

/// Runs one anosov-kit subcommand. argv[0] is the program name.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Same, with the arguments after the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace anosov::cli
