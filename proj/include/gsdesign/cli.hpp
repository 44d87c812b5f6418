#ifndef GSDESIGN_CLI_HPP
#define GSDESIGN_CLI_HPP

#include <string>
#include <vector>

namespace gsdesign::cli {

// Runs one toolkit invocation; args excludes the program name.
// Exit codes: 0 success (designs: proven optimal), 2 input or usage error,
// 3 design truncated by its budget, 4 internal invariant failure.
int run(const std::vector<std::string>& args);

}  // namespace gsdesign::cli

#endif
