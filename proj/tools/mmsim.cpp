#include "mmsim/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) { return mmsim::cli::run_cli(argc, argv, std::cout, std::cerr); }
