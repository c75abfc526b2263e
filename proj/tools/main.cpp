#include <iostream>

#include "bratu_cli/commands.hpp"

int main(int argc, char** argv) { return bratu::cli::run(argc, argv, std::cin, std::cout, std::cerr); }
