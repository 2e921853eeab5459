#include <iostream>
#include <string>
#include <vector>

#include "qtgi/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qtgi::run_cli(args, std::cout, std::cerr);
}
