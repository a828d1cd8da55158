#include <iostream>

#include "kg/cli.hpp"

int main(int argc, char** argv) { return kg::run_cli(argc, argv, std::cout, std::cerr); }
