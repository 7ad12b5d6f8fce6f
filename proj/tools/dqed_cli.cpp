#include <iostream>

#include "dqed/cli.hpp"

int main(int argc, char** argv) { return dqed::cli::run(argc, argv, std::cout, std::cerr); }
