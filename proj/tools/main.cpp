#include <iostream>
#include <string>
#include <vector>

#include "ablsem/cli.hpp"

int main(int argc, char** argv) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    return ablsem::run_command(args, std::cout, std::cerr);
}
