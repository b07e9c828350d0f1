#include <iostream>
#include <string>
#include <vector>

#include "latmat/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return latmat::run(args, std::cout, std::cerr);
}
