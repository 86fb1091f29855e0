#include <iostream>
#include <string>
#include <vector>

#include "fuzzygeo/cli.hpp"

int main(int argc, char** argv) {
  return fuzzygeo::run_cli(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
