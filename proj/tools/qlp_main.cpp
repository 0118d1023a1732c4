#include <iostream>
#include <string>
#include <vector>

#include "qlp/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qlp::cli::run(args, std::cout, std::cerr);
}
