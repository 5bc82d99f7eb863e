#include <iostream>

#include "phaseeval/cli.hpp"

int main(int argc, char** argv) { return phaseeval::run_cli(argc, argv, std::cout, std::cerr); }
