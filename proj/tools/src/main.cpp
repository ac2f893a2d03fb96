#include <iostream>

#include "essdim/cli.hpp"

int main(int argc, char **argv) { return essdim::cli::run(argc, argv, std::cout, std::cerr); }
