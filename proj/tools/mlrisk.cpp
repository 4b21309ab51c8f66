#include <iostream>

#include "mlrisk/cli.hpp"

int main(int argc, char** argv) {
    return mlrisk::cli::run(argc, argv, std::cout, std::cerr);
}
