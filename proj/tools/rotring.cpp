#include <iostream>

#include "rotring/cli.hpp"

int main(int argc, char** argv) { return rotring::run_cli(argc, argv, std::cout, std::cerr); }
