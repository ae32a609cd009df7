#include <iostream>
#include <string>
#include <vector>

#include "treebed/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return treebed::cli::run(args, std::cout, std::cerr);
}
