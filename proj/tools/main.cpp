#include <iostream>
#include <string>
#include <vector>

#include "stablepgf/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return stablepgf::cli::dispatch(args, std::cout, std::cerr);
}
