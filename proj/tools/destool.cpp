#include <cstdio>
#include <string>
#include <vector>

#include "des/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    des::CommandResult res = des::run_command(args);
    std::fputs(res.stdout_report.c_str(), stdout);
    return res.exit_code;
}
