#include <iostream>

#include "locwave/cli.hpp"

int main(int argc, char** argv) { return locwave::cli::run(argc, argv, std::cout, std::cerr); }
