#include <iostream>

#include "pbw/cli.hpp"

int main(int argc, char** argv) { return pbw::run_cli(argc, argv, std::cout, std::cerr); }
