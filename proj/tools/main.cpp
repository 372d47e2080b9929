#include <iostream>
#include <string>
#include <vector>

#include "recopt/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return recopt::run_cli(args, std::cout, std::cerr);
}
