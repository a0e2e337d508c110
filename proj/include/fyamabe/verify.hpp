#ifndef FYAMABE_VERIFY_HPP
#define FYAMABE_VERIFY_HPP

// The acceptance battery: every check the library promises, with pinned
// tolerances, runnable from the CLI (`fyamabe verify`) and from the test
// suite.  Each criterion reports one pass/fail line.

#include "fyamabe/cylinder.hpp"

#include <string>
#include <vector>

namespace fyamabe::verify {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    double seconds = 0.0;
    std::string details;
};

/// Run the full battery (ids 1..12) or, with quick = true, the fast
/// kernel/symbol subset {1,2,3,4,5,12}.
std::vector<CriterionResult> run_acceptance(bool quick = false,
                                            int threads = 1);

/// Smooth strictly positive random profile (low-pass trigonometric
/// polynomial); shared by the oracle comparisons and the tests.
PeriodicProfile random_smooth_profile(double L, int N, std::uint64_t seed);

std::string report_to_json(const std::vector<CriterionResult>& rs);

} // namespace fyamabe::verify

#endif
