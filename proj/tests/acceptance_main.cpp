#include <iostream>
#include <string>

#include "liedeg/acceptance.hpp"

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::string(argv[1]) == "--quick";
  return liedeg::run_acceptance_suite(std::cout, quick) ? 0 : 1;
}
