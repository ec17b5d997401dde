#include <iostream>

#include "vortwave/cli/cli.hpp"

int main(int argc, char** argv) { return vortwave::cli::run_main(argc, argv, std::cout, std::cerr); }
