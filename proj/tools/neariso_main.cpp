#include <iostream>

#include "neariso/cli.hpp"

int main(int argc, char** argv) { return neariso::cli::run(argc, argv, std::cout, std::cerr); }
