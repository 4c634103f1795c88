#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> const args(argv + 1, argv + argc);
  return mlk::cli::Run(args, std::cout, std::cerr);
}
