#include <iostream>
#include <string>
#include <vector>

#include "liftlab/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return liftlab::run_cli(args, std::cout, std::cerr);
}
