#include <cstdlib>
#include <iostream>

#include "tomolink/cli.hpp"

int main(int argc, char** argv) {
  return tomolink::main_entry(argc, argv, std::cout, std::cerr,
                              std::getenv("TOMOLINK_CEILING"));
}
