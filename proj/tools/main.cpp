#include "sumsetlab/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return sumsetlab::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
