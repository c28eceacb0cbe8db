#include <iostream>

#include "tmotif/cli.hpp"

int main(int argc, char** argv) {
  return tmotif::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
