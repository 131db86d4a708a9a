#include <iostream>

#include "entlp/cli.hpp"

int main(int argc, char** argv) { return entlp::cli::run(argc, argv, std::cout, std::cerr); }
