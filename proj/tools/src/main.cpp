#include <iostream>
#include <string>
#include <vector>

#include "guesswork/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return guesswork::cli::run(args, std::cin, std::cout, std::cerr);
}
