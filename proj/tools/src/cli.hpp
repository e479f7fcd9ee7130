#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace voxmerge::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitData = 2;

/// Runs the `voxmerge` command line. args[0] is the program name. Results
/// go to `out`; diagnostics and the resolved configuration go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Edit distance used for "did you mean" hints.
std::size_t levenshtein(const std::string& a, const std::string& b);

}  // namespace voxmerge::cli
