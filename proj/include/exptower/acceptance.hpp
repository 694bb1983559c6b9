#ifndef EXPTOWER_ACCEPTANCE_HPP
#define EXPTOWER_ACCEPTANCE_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace exptower {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
};

inline constexpr std::uint64_t k_default_acceptance_seed = 12345;

// Runs the twelve end-to-end checks the library promises, in order, with all
// tolerances pinned inside.  Randomized checks draw from a mt19937_64 seeded
// deterministically, so the outcome depends only on the seed.
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = k_default_acceptance_seed);

bool all_passed(const std::vector<CriterionResult>& results);

} // namespace exptower

#endif
