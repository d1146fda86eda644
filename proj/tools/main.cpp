#include <iostream>

#include "nclass/cli_app.hpp"

int main(int argc, char** argv) {
  return nclass::run_cli(argc, argv, std::cout, std::cerr);
}
