#include <exception>
#include <iostream>

#include "ample/cli.hpp"

int main(int argc, char** argv) {
  try {
    return ample::cli::run(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 4;
  }
}
