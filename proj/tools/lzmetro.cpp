#include <iostream>

#include "lzmetro/cli.hpp"

int main(int argc, char** argv) { return lzm::cli::main_entry(argc, argv, std::cout, std::cerr); }
