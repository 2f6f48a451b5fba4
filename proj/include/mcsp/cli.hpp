#pragma once

// Command-line front end.  Subcommands: gen, blocks, solve, export-lp,
// import-solution, bench.  All reports are JSON (machine use) or CSV
// (table reproduction); every emitted solution is re-validated first.

#include <iosfwd>
#include <string>
#include <vector>

namespace mcsp::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitInput = 2;       // unreadable or malformed files
inline constexpr int kExitValidation = 3;  // infeasible / invalid domain data
inline constexpr int kExitInternal = 4;

// args excludes the program name.  Streams default to std::cout/std::cerr.
int run(const std::vector<std::string>& args);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, const char* const* argv);

}  // namespace mcsp::cli
