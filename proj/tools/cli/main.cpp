// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "duplex_cli/cli.hpp"

int main(int argc, char** argv) { return duplex::cli::run(argc, argv, std::cout, std::cerr); }
