#include <iostream>

#include "gauss_neumann/cli.hpp"

int main(int argc, char** argv) { return gauss_neumann::cli::run(argc, argv, std::cout, std::cerr); }
