#define DOCTEST_CONFIG_IMPLEMENT
#include <iostream>

#include "doctest.h"
#include "generators.hpp"

int main(int argc, char** argv) {
  std::cout << "property seed: " << liesym::testgen::base_seed() << "\n";
  doctest::Context ctx(argc, argv);
  return ctx.run();
}
