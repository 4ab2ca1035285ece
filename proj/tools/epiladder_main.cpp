#include <iostream>
#include <string>
#include <vector>

#include "epiladder/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return epiladder::run_cli(args, std::cout, std::cerr);
}
