#pragma once

#include "semiample/io.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace semiample {

struct RunOptions {
    unsigned threads = 1;
    bool verify = false;
    std::string base_dir = ".";  // relative input paths in a corpus resolve against this
};

// Exit codes: 0 success, 1 input or schema error, 2 precondition failure,
// 3 internal inconsistency between two computations.
struct CommandOutcome {
    int exit_code = 0;
    Json report;
};

// "fan check", "divisor sigma-d", ... in a fixed order.
const std::vector<std::string>& command_names();

// Never throws; errors become reports with a nonzero exit code.
CommandOutcome dispatch(const std::string& command, const Json& input, const RunOptions& options);

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace semiample
