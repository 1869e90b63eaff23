#include "artin/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return artin::cli::run_main(argc, argv, std::cout, std::cerr);
}
