#include <iostream>

#include "hamest/cli.hpp"

int main(int argc, char** argv) { return hamest::cli::run(argc, argv, std::cerr); }
