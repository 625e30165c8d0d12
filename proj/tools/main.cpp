#include <iostream>

#include "diarasr/cli.hpp"

int main(int argc, char **argv) {
    return diarasr::run_cli(argc, argv, std::cout, std::cerr);
}
