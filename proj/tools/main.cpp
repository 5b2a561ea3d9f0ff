#include "delzant/cli.hpp"

#include <iostream>

int main(int argc, char** argv) { return delzant::cli::run(argc, argv, std::cout, std::cerr); }
