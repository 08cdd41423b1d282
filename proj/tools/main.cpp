#include <iostream>

#include "runner.hpp"

int main(int argc, char** argv) {
  return gltkit::cli::run_cli(argc, argv, std::cout, std::cerr);
}
