#include <iostream>

#include "bimerton_cli/app.hpp"

int main(int argc, char** argv) {
    return bimerton::cli::run(argc, argv, std::cout, std::cerr);
}
