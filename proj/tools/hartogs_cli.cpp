#include "hartogs/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return hartogs::cli::cli_main(args, std::cout, std::cerr);
}
