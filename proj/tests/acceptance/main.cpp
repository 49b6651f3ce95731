// Acceptance suite runner: one [PASS]/[FAIL] line per criterion, exit
// status 0 only if every criterion holds. `--criterion k` selects one,
// `--threads t` parallelizes the disorder loops.

#include <cstdlib>
#include <iostream>
#include <string>

#include "acceptance.hpp"

int main(int argc, char** argv) {
    potts::acceptance::Options options;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--threads" && i + 1 < argc) {
            options.threads = static_cast<unsigned>(std::atoi(argv[++i]));
        } else if (arg == "--criterion" && i + 1 < argc) {
            options.only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance_suite [--criterion k] [--threads t]\n";
            return 2;
        }
    }
    const auto results = potts::acceptance::run(options);
    potts::acceptance::print_report(std::cout, results);
    return potts::acceptance::all_passed(results) ? 0 : 1;
}
