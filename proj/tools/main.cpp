#include <cstdlib>
#include <iostream>
#include <unistd.h>

#include "cli.hpp"

int main(int argc, char** argv) {
  bool color = ::isatty(STDERR_FILENO) && std::getenv("UILOG_NO_COLOR") == nullptr;
  return uilog::cli::run(argc, argv, std::cout, std::cerr, color);
}
