#include <iostream>

#include "fmutest/pipeline/cli.hpp"

int main(int argc, char** argv) {
  return fmutest::pipeline::run_cli(argc, argv, std::cout, std::cerr);
}
