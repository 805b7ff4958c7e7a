#include <iostream>

#include "dlat/cli.hpp"

int main(int argc, char** argv) { return dlat::cli_main(argc, argv, std::cin, std::cout, std::cerr); }
