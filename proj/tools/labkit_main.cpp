#include <iostream>
#include <string>
#include <vector>

#include "labkit/cli.hpp"

int main(int argc, char** argv)
{
  std::vector<std::string> args(argv + 1, argv + argc);
  return labkit::cli::run(args, std::cin, std::cout, std::cerr);
}
