#include <iostream>

#include "treecount/cli.hpp"

int main(int argc, char** argv) {
  return treecount::cli::run(argc, argv, std::cout, std::cerr);
}
