#include <iostream>

#include "qwvd/cli.hpp"

int main(int argc, char** argv) { return qwvd::cli::main_entry(argc, argv, std::cout, std::cerr); }
