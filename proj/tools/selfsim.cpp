#include <iostream>

#include "selfsim/cli.hpp"

int main(int argc, char** argv) { return selfsim::cli::run(argc, argv, std::cout, std::cerr); }
