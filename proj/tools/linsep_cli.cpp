#include <iostream>
#include <string>
#include <vector>

#include "linsep/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return linsep::run_cli(args, std::cout, std::cerr);
}
