#include "orbivfc/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return orbivfc::cli::run(argc, argv, std::cout, std::cerr); }
