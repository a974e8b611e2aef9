#include <iostream>
#include <string>
#include <vector>

#include "limitroots/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return limitroots::run_cli(args, std::cout, std::cerr);
}
