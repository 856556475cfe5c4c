#include <iostream>
#include <vector>

#include "cup/cli.hpp"

int main(int argc, char** argv) {
  return cup::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
