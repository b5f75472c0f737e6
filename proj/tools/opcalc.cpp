#include <iostream>
#include <string>
#include <vector>

#include "opcalc/cli.hpp"

int main(int argc, char** argv) {
    return opcalc::cli::main(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
