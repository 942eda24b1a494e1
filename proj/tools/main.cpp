#include <iostream>

#include "scandiag/cli.hpp"

int main(int argc, char** argv) { return scandiag::run_cli(argc, argv, std::cout, std::cerr); }
