#include <iostream>
#include <string>
#include <vector>

#include "aasum/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return aasum::cli::run(args, std::cout, std::cerr);
}
