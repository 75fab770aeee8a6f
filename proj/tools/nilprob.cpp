#include <iostream>

#include "nilprob/cli.hpp"

int main(int argc, char** argv) { return nilprob::cli::run(argc, argv, std::cout, std::cerr); }
