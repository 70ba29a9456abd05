#include <iostream>

#include "bredonkit/cli.hpp"

int main(int argc, char** argv) { return bredonkit::cli::run(argc, argv, std::cout, std::cerr); }
