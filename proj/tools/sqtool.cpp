#include <iostream>
#include <string>
#include <vector>

#include "sq/cli.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return sq::run_cli(args, std::cout, std::cerr);
}
