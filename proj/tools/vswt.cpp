#include "vswt/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return vswt::cli::run(argc, argv, std::cout, std::cerr);
}
