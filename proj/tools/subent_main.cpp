#include <iostream>
#include <string>
#include <vector>

#include "subent/cli.hpp"

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv, argv + argc);
  return subent::cli::run(args, std::cout, std::cerr);
}
