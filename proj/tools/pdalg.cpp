#include <iostream>

#include "pdalg/cli.hpp"

int main(int argc, char** argv) { return pdalg::cli::run(argc, argv, std::cout, std::cerr); }
