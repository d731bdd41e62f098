#include <iostream>
#include <string>
#include <vector>

#include "bpv/cli/commands.hpp"

int main(int argc, char** argv) {
    return bpv::cli::run(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
