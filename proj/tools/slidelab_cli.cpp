#include "slidelab/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return slidelab::cli::run(argc, argv, std::cout, std::cerr); }
