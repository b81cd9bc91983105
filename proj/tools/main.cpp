#include <iostream>

#include "reeb/cli.hpp"

int main(int argc, char** argv) { return reeb::run_cli(argc, argv, std::cout, std::cerr); }
