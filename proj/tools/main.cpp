#include <iostream>

#include "polariton/cli.hpp"

int main(int argc, char** argv) { return polariton::run_cli(argc, argv, std::cout, std::cerr); }
