#include <iostream>

#include "qnorm/cli.hpp"

int main(int argc, char** argv) { return qnorm::cli::run(argc, argv, std::cout); }
