#include <iostream>

#include "opacity/cli.hpp"

int main(int argc, char** argv) {
  return opacity::cli::run({argv + 1, argv + argc}, std::cout, std::cerr);
}
