#include <iostream>
#include <string>
#include <vector>

#include "cubescore/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return cubescore::cli::run(args, std::cout, std::cerr);
}
