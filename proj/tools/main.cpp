#include <iostream>
#include <string>
#include <vector>

#include "confl/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return confl::run(args, std::cout, std::cerr);
}
