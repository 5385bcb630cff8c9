#include "tracegeo/cli/commands.hpp"

#include <iostream>

int main(int argc, char** argv) {
  std::ios::sync_with_stdio(false);
  return tracegeo::cli::run_cli({argv + 1, argv + argc}, std::cin, std::cout, std::cerr);
}
