#include <iostream>
#include <string>
#include <vector>

#include "torelli/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return torelli::cli::run(args, std::cout, std::cerr);
}
