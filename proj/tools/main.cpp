#include <cstdlib>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
  return litonto::cli::run(argc, argv, {std::cout, std::cerr}, std::getenv("LITONTO_CONFIG"));
}
