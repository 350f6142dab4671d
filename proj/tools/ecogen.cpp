#include "ecogen/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
  return ecogen::run(argc, argv, std::cout, std::cerr);
}
