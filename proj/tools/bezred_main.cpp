#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bezred/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    bezred::CliResult res = bezred::run_cli(args, [] {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    });
    std::cout << res.output;
    std::cerr << res.error;
    return res.exit_code;
}
