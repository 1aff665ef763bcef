#include <iostream>

#include "dpres/cli.hpp"

int main(int argc, char** argv) {
  return dpres::cli::dispatch(argc, argv, std::cout, std::cerr);
}
