#include <iostream>

#include "nilcap_tools/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return nilcap::tools::run_cli(args, std::cout, std::cerr);
}
