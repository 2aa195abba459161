#include <iostream>
#include <string>
#include <vector>

#include "attainrisk/cli/cli.hpp"

int main(int argc, char** argv) {
  return attainrisk::cli::main_entry(std::vector<std::string>(argv, argv + argc), std::cout, std::cerr);
}
