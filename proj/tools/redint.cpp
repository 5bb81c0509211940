#include <iostream>

#include "redint/harness.hpp"

int main(int argc, char** argv) {
  try {
    return redint::run_cli(argc, argv, std::cout, std::cerr);
  } catch (const std::exception& e) {
    std::cerr << "redint: " << e.what() << "\n";
    return redint::kExitFail;
  }
}
