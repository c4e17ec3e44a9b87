#ifndef TREQ_CLI_HPP_
#define TREQ_CLI_HPP_

#include <string>
#include <vector>

namespace treq {

/// Runs one CLI job. args excludes the program name.
/// Exit codes: 0 equivalent / success, 1 not equivalent, 2 unknown,
/// 3 usage or input error, 4 internal error.
int cli_run(const std::vector<std::string>& args);

}  // namespace treq

#endif
