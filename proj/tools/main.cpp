#include <iostream>

#include "wavebranch/cli.hpp"

int main(int argc, char** argv) {
  return wavebranch::cli::main_entry(argc, argv, std::cout, std::cerr);
}
