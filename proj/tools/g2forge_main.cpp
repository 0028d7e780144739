#include <iostream>
#include <string>
#include <vector>

#include "g2forge/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return g2forge::run_cli(args, std::cout, std::cerr);
}
