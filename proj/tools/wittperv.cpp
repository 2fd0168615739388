#include <iostream>

#include "wittperv/cli.hpp"

int main(int argc, char** argv) { return wittperv::RunCli(argc, argv, std::cout, std::cerr); }
