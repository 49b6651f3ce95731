#ifndef POTTS_ACCEPTANCE_HPP
#define POTTS_ACCEPTANCE_HPP

#include <ostream>
#include <string>
#include <vector>

namespace potts::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

struct Options {
    unsigned threads = 1;
    int only = 0;  // 0 runs all criteria, otherwise a single id in 1..10
};

/// Runs the acceptance criteria and returns one result per criterion, in
/// id order. Every tolerance is fixed in the implementation; the options
/// only control parallelism and selection.
std::vector<CriterionResult> run(const Options& options);

/// One "[PASS]/[FAIL] id name (time): detail" line per criterion.
void print_report(std::ostream& out,
                  const std::vector<CriterionResult>& results);

bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace potts::acceptance

#endif
