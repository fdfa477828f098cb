#include "pvcsd/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return pvcsd::run_cli(argc, argv, std::cout, std::cerr);
}
