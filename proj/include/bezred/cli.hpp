#pragma once

#include <functional>
#include <string>
#include <vector>

namespace bezred {

struct CliResult {
    int exit_code = 0;
    std::string output;  // stdout payload
    std::string error;   // stderr payload
};

/// Run one CLI request. `args` excludes the program name. `read_stdin` is
/// called at most once, only when a command needs input and no --input path
/// was given; when absent, stdin is treated as empty.
///
/// Exit codes: 0 success, 1 parse error, 2 precondition violation,
/// 3 witness not found, 4 certificate verification failure (verdict still
/// printed), 70 internal error.
CliResult run_cli(const std::vector<std::string>& args,
                  const std::function<std::string()>& read_stdin = {});

}  // namespace bezred
