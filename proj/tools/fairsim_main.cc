#include <iostream>
#include <string>
#include <vector>

#include "fairsim/cli.hh"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return fairsim::cli_main(args, std::cout, std::cerr);
}
