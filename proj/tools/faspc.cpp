#include <iostream>

#include "fasp/cli.hpp"

int main(int argc, char** argv) { return fasp::cli::run(argc, argv, std::cout, std::cerr); }
