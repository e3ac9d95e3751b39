#include <iostream>

#include "morse/cli.hpp"

int main(int argc, char** argv) {
  return morse::run_cli(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
