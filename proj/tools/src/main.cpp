#include <cstdlib>
#include <iostream>

#include "qmonogamy/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return qmono::cli::run(args, std::cout, std::cerr);
}
