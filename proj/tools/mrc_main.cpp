#include <iostream>
#include <string>
#include <vector>

#include "mrc/cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const mrc::cli::CommandResult result = mrc::cli::run(args);
  std::cout << result.out;
  std::cerr << result.err;
  return result.exit_code;
}
