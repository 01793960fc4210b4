#include <iostream>
#include <string>
#include <vector>

#include "pairlik/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return pairlik::cli::run(args, std::cout, std::cerr);
}
