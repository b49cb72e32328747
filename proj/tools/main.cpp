#include <iostream>
#include <string>
#include <vector>

#include "flagcert/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  return flagcert::run_subcommand(args, std::cout, std::cerr);
}
