#ifndef HOLDEX_SELFTEST_HPP
#define HOLDEX_SELFTEST_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace holdex {

struct CriterionResult {
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0.0;
};

/// Runs the full acceptance suite: counterexample reproduction, the random
/// extension-correctness sweeps, the grid oracle comparison, and the
/// structural property checks. Deterministic (fixed seeds).
std::vector<CriterionResult> run_selftest();

/// Prints one pass/fail line per criterion; returns true iff all pass.
bool run_selftest(std::ostream& out);

} // namespace holdex

#endif
