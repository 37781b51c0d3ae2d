#include "finseer/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return finseer::run_cli(argc, argv, std::cout, std::cerr);
}
