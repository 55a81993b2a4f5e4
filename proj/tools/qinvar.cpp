#include <iostream>

#include "qinvar/cli.hpp"

int main(int argc, char** argv) { return qinvar::cli::run_cli(argc, argv, std::cout, std::cerr); }
