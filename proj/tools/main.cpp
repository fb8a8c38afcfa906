#include <iostream>

#include "rrm_cli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return rrm::cli::run(args, std::cout, std::cerr);
}
