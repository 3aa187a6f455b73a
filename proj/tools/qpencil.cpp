#include <iostream>

#include "qp/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  return qp::run_cli(args, std::cout, std::cerr);
}
