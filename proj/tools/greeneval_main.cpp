#include <iostream>

#include "greeneval/cli.hpp"

int main(int argc, char** argv) { return greeneval::cli::run_cli(argc, argv, std::cout, std::cerr); }
