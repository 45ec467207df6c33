#include <iostream>

#include "fracsol_cli/cli.hpp"

int main(int argc, char** argv) { return fracsol::cli::run(argc, argv, std::cout, std::cerr); }
