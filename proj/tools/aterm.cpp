#include "aterm/cli.hpp"

#include <iostream>

int main(int argc, char** argv) {
    return aterm::cli::run(argc, argv, std::cout, std::cerr);
}
