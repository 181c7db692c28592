#include <iostream>

#include "ppdiv/cli.hpp"

int main(int argc, char** argv) { return ppdiv::cli::run(argc, argv, std::cout, std::cerr); }
