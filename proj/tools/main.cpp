#include <iostream>
#include <string>
#include <vector>

#include "dsfusion/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return dsfusion::cli::run(args, std::cout, std::cerr);
}
