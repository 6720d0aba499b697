#include "lyapzero/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return lyapzero::run_cli(argc, argv, std::cout, std::cerr); }
