// Acceptance suite: runs every criterion at its stated tolerance and prints
// one pass/fail line per criterion.
#include <iostream>

#include "toric/verify.hpp"

int main() {
    auto results = toric::run_acceptance(std::cout);
    bool all = true;
    for (const auto& r : results) all = all && r.pass;
    std::cout << (all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES PRESENT")
              << std::endl;
    return all ? 0 : 1;
}
