#include "linkmorse/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return linkmorse::run_cli(argc, argv, std::cout, std::cerr);
}
