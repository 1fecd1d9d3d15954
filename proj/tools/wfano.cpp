#include <iostream>

#include "wfano/cli.hpp"

int main(int argc, char** argv) { return wfano::cli::run(argc, argv, std::cout, std::cerr); }
