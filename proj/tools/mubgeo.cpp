#include <iostream>

#include "mubgeo/cli.hpp"

int main(int argc, char** argv) { return mubgeo::run_cli(argc, argv, std::cout, std::cerr); }
