#include "cli.hpp"

int main(int argc, char** argv) { return potts::cli::run(argc, argv); }
