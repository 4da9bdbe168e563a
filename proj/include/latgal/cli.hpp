#ifndef LATGAL_CLI_HPP
#define LATGAL_CLI_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace latgal {

// Full command-line dispatch; `args` excludes the program name. Returns the
// process exit code: 0 success, 1 usage or parse error, 2 computation error
// (degenerate, unsupported, inconclusive), 3 verification mismatch.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace latgal

#endif
