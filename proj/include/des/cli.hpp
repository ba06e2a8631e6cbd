#pragma once

#include <string>
#include <vector>

namespace des {

// Exit codes: 0 success, 1 negative analysis verdict, 2 usage error,
// 3 input error, 4 resource error.
struct CommandResult {
    int exit_code = 0;
    std::string stdout_report;
    std::vector<std::string> output_files;
};

// Dispatches one subcommand. argv excludes the program name.
CommandResult run_command(const std::vector<std::string>& argv);

}  // namespace des
