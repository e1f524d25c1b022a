#include <iostream>
#include <string>
#include <vector>

#include "morse_gpe/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return morse_gpe::cli::run(args, std::cout, std::cerr);
}
