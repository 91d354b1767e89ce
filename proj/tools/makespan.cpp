#include <iostream>

#include "makespan/cli.hpp"

int main(int argc, char **argv) { return makespan::cli::run(argc, argv, std::cout, std::cerr); }
