#include <iostream>

#include "weylkit/cli.hpp"

int main(int argc, char** argv) { return weylkit::run_main(argc, argv, std::cout, std::cerr); }
