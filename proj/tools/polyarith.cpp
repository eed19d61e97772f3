#include <iostream>

#include "polyarith/cli.hpp"

int main(int argc, char** argv) { return polyarith::cli::run(argc, argv, std::cout, std::cerr); }
