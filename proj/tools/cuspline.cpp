#include <iostream>

#include "cuspline/cli/commands.hpp"

int main(int argc, char** argv) {
  return cuspline::cli::run_cli(argc, argv, std::cout, std::cerr);
}
