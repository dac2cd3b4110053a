#include <iostream>
#include <string>
#include <vector>

#include "gauss_renyi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return gauss_renyi::cli::run_cli(args, std::cout, std::cerr);
}
