#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace ltl::cli {

/// Exit codes of run().
inline constexpr int kExitOk = 0;
inline constexpr int kExitIo = 1;
inline constexpr int kExitInvalid = 2;
inline constexpr int kExitCap = 3;

/// Entry point shared by the ltl executable and the tests. args excludes the
/// program name. Results go to `out` unless --output is given; diagnostics go
/// to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace ltl::cli
