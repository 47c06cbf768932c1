#include <iostream>

#include "tccr/cli.hpp"

int main(int argc, char** argv) { return tccr::cli::run(argc, argv, std::cerr); }
