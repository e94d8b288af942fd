#include <iostream>
#include <vector>

#include "terminfer/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return terminfer::cli::run(args, std::cout, std::cerr);
}
