#include <iostream>

#include "sectionlab/cli.hpp"

int main(int argc, char** argv) { return sectionlab::run_cli(argc, argv, std::cout, std::cerr); }
