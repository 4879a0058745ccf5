#include <iostream>

#include "anosov/cli.hpp"

int main(int argc, char** argv) { return anosov::cli::run(argc, argv, std::cout, std::cerr); }
