#ifndef KG_CLI_HPP
#define KG_CLI_HPP

#include <iosfwd>

namespace kg {

/// Entry point behind the `kg` binary. Exit codes: 0 holds / success,
/// 1 fails / violations, 2 unknown, 3 usage or input error.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace kg

#endif  // KG_CLI_HPP
