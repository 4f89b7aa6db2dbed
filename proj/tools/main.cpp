#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  const auto result = translucent::cli::run(args);
  std::cout << result.output();
  std::cerr << result.errors;
  return result.exit_code;
}
