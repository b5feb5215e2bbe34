#include "cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return multiplane::cli::run(argc, argv, std::cout, std::cerr); }
