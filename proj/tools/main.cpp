#include "semiample/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return semiample::run_cli(argc, argv, std::cout, std::cerr); }
