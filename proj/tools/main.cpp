// main.cpp

#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    return concentration::cli::run(argc, argv, std::cout, std::cerr);
}
