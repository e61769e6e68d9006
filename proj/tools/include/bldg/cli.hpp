#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace bldg::cli {

inline constexpr int kSchemaVersion = 1;
inline constexpr unsigned long long kDefaultSeed = 1;

/// Runs one command line (without the program name). Writes the JSON
/// report to `out` and a prose summary to `err`. Returns 0 when every
/// check passed, 1 when some check failed and 2 on a usage error.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace bldg::cli
