#include <iostream>
#include <string>
#include <vector>

#include "credeval/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return credeval::cli::run(args, std::cout, std::cerr);
}
