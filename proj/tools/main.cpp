#include <iostream>

#include "wordtour/cli.hpp"

int main(int argc, char** argv) { return wordtour::cli::run(argc, argv, std::cout, std::cerr); }
