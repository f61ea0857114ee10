#include "hlmax/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return hlmax::run_cli(argc, argv, std::cout, std::cerr); }
