#include <iostream>
#include <string>
#include <vector>

#include "puzzletext/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    return puzzletext::cli::run(args, std::cout, std::cerr);
}
