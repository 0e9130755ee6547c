#include <iostream>

#include "ffproj/cli.hpp"

int main(int argc, char** argv) { return ffproj::cli::run(argc, argv, std::cout, std::cerr); }
