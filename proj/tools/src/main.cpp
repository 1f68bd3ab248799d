#include <iostream>

#include "pseudoherm_cli/cli.hpp"

int main(int argc, char** argv) { return pseudoherm::cli::run(argc, argv, std::cout, std::cerr); }
