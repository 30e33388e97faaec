#include <iostream>

#include "dagger_cli/commands.hpp"

int main(int argc, char** argv) { return dagger::cli::run_cli(argc, argv, std::cout, std::cerr); }
