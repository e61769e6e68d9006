#include <iostream>

#include "bldg/cli.hpp"

int main(int argc, char** argv) {
  return bldg::cli::dispatch(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
