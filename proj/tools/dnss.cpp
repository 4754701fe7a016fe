#include <iostream>

#include "dnss/cli.hpp"

int main(int argc, char** argv) { return dnss::run_cli(argc, argv, std::cout, std::cerr); }
