#include <iostream>

#include "runlattice/cli.hpp"

int main(int argc, char** argv) { return runlattice::run_cli(argc, argv, std::cout, std::cerr); }
