#include "setdepth/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return setdepth::run_cli(argc, argv, std::cout, std::cerr); }
