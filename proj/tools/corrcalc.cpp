#include <iostream>

#include "corrcalc/cli.hpp"

int main(int argc, char **argv)
{
  return corrcalc::run(argc, argv, std::cout, std::cerr);
}
