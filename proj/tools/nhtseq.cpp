#include "cli.hpp"

int main(int argc, char** argv) { return nht::cli::run(argc, argv, std::cout, std::cerr); }
