#include <iostream>
#include <string>
#include <vector>

#include "tokcheck_cli/commands.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return tokcheck::cli::run_cli(args, std::cout, std::cerr);
}
