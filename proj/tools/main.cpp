#include <iostream>

#include "invperm/cli.hpp"

int main(int argc, char** argv) {
  return invperm::cli::run(argc, argv, std::cout, std::cerr);
}
