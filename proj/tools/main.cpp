#include <iostream>
#include <string>
#include <vector>

#include "cellcode/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cellcode::run_cli(args, std::cout, std::cerr);
}
