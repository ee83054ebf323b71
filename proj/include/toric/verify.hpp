#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "toric/config.hpp"
#include "toric/orbital.hpp"

namespace toric {

struct CriterionResult {
    int number = 0;
    std::string name;
    bool pass = false;
    std::string detail;
};

// The acceptance criteria, one function each. `log` receives progress lines.
CriterionResult criterion_integral_equivalence(std::ostream& log);
CriterionResult criterion_dichotomy_epsilon(std::ostream& log);
CriterionResult criterion_conductor_identities(std::ostream& log);
CriterionResult criterion_orbit_formula(std::ostream& log);
CriterionResult criterion_appendix_search(std::ostream& log);
CriterionResult criterion_measure_counting(std::ostream& log);
CriterionResult criterion_formal_degree(std::ostream& log);
CriterionResult criterion_whittaker(std::ostream& log);
CriterionResult criterion_orbital_audits(std::ostream& log);

// run all criteria, print one pass/fail line per criterion, return all results
std::vector<CriterionResult> run_acceptance(std::ostream& log);

}  // namespace toric
