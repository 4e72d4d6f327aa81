#include <contrakit/contrakit.hpp>

#include <iostream>

int main(int argc, char **argv) {
  return contrakit::run_cli(argc, argv, std::cout, std::cerr).exit_code;
}
