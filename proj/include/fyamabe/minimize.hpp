#ifndef FYAMABE_MINIMIZE_HPP
#define FYAMABE_MINIMIZE_HPP

// Minimization of the energy quotient over positive L-periodic profiles:
// projected gradient descent with a spectral (Barzilai-Borwein) step on
// the constraint surface int v^{beta+1} = 1, classification of the
// minimizer, and sweeps of the period.

#include "fyamabe/cylinder.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace fyamabe {

enum class StepRule { fixed, backtracking, spectral_bb };
enum class InitKind { constant, cos_perturbed, bubble };
enum class Classification { constant, nonconstant };

struct SolveConfig {
    int N = 256;                  ///< grid size, power of two
    int max_iter = 20000;
    double grad_tol = 1e-10;      ///< sup-norm of the Euler-Lagrange residual
    StepRule step_rule = StepRule::spectral_bb;
    std::vector<InitKind> inits = {InitKind::constant, InitKind::cos_perturbed,
                                   InitKind::bubble};
    double amp_threshold = 1e-6;  ///< amplitude below which a profile is constant
    std::uint64_t seed = 0;       ///< drives the random part of cos_perturbed
};

struct MinimizeResult {
    PeriodicProfile profile;      ///< normalized to int v^{beta+1} = 1, max at t=0
    double c_value = 0.0;         ///< quotient at the minimizer
    double cstar_value = 0.0;     ///< quotient of the constant profile
    Classification classification = Classification::constant;
    double amplitude = 0.0;       ///< max v - min v
    double residual = 0.0;        ///< sup-norm of the rescaled EL equation
    int iterations = 0;
    InitKind init_used = InitKind::constant;
    bool converged = false;
    bool ambiguous = false;       ///< amplitude and energy-gap tests disagree
    bool monotone = true;         ///< F never increased between accepted steps
    int positivity_projections = 0;
};

/// Quotient of the constant profile, c*(L) = c_{n,gamma} L^{(beta-1)/(beta+1)}.
double constant_energy(const ModelParams& mp, double L);

/// Relabel a profile with a new period; values are unchanged.
PeriodicProfile rescale_profile(const PeriodicProfile& p, double L_new);

/// Minimize the quotient at period L from every configured initialization
/// and return the lowest result.
MinimizeResult minimize_F(const ModelParams& mp, const Kernel& k, double L,
                          const SolveConfig& cfg);

struct SweepRecord {
    double L = 0.0;
    double c = 0.0;
    double cstar = 0.0;
    Classification classification = Classification::constant;
    double amplitude = 0.0;
    double residual = 0.0;
    bool ok = false;
    bool refined = false;         ///< produced by bisection of a flip
    std::string error;
};

/// Solve at every period of `L_values` (sorted ascending), then bisect
/// each classification flip down to `refine_dL`.  Per-point failures are
/// recorded and the sweep continues.  `threads` > 1 distributes the
/// initial pass.
std::vector<SweepRecord> sweep_L(const ModelParams& mp, const Kernel& k,
                                 std::vector<double> L_values,
                                 const SolveConfig& cfg,
                                 double refine_dL = 1e-3, int threads = 1);

} // namespace fyamabe

#endif
