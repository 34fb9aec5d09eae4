#include <iostream>

#include "tek/cli.hpp"

int main(int argc, char** argv) { return tek::run_cli(argc, argv, std::cout, std::cerr); }
