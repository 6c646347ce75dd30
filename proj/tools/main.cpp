#include <iostream>

#include "experiment.hpp"

int main(int argc, char** argv) {
  return pfree::cli::main_entry(argc, argv, std::cout, std::cerr);
}
