#include <iostream>

#include "beamselect/cli.hpp"

int main(int argc, char** argv) {
  return beamselect::cli::run(argc, argv, std::cout, std::cerr);
}
