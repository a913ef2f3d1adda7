// SPDX-License-Identifier: MIT
#include "brank/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return brank::run(args, std::cout, std::cerr);
}
