#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace latcount {

// Full command-line surface, in-process for testability.  args excludes the
// program name.  Exit codes: 0 ok, 1 internal error, 2 parse/usage error,
// 3 budget refusal, 4 crosscheck mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latcount
