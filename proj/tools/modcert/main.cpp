#include "modcert/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return modcert::cli::run(args, std::cout, std::cerr);
}
