#include <iostream>

#include "orthlin/cli.hpp"

int main(int argc, char** argv) { return orthlin::cli::run(argc, argv, std::cout, std::cerr); }
