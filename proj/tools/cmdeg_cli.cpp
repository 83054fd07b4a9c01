#include <vector>

#include "cmdeg/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cmdeg::cli::run(args);
}
