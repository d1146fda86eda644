#ifndef NCLASS_CLI_APP_HPP
#define NCLASS_CLI_APP_HPP

#include <ostream>

namespace nclass {

// Command-line entry point. Writes results to --out (or `out` for "-"),
// diagnostics to `err`. Returns 0 on success, 2 on configuration errors,
// 3 when a computation was rejected on numerical grounds.
int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err);

}  // namespace nclass

#endif
