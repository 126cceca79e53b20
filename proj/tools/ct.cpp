#include <iostream>

#include "cattree/cli.hpp"

int main(int argc, char** argv) { return cattree::cli::run(argc, argv, std::cout, std::cerr); }
