#include <iostream>

#include "proxcvx/cli.hpp"

int main(int argc, char** argv) { return proxcvx::run_cli(argc, argv, std::cout, std::cerr); }
