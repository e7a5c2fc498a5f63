#include <iostream>
#include <string>
#include <vector>

#include "poisapprox/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return poisapprox::run(args, std::cout, std::cerr);
}
