#include <iostream>

#include "helson/cli.hpp"

int main(int argc, char** argv) { return helson::run_cli(argc, argv, std::cout, std::cerr); }
