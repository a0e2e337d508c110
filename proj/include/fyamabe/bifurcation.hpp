#ifndef FYAMABE_BIFURCATION_HPP
#define FYAMABE_BIFURCATION_HPP

// The linearized eigenvalue delta_L around the constant solution, by two
// independent routes (implicit Gamma expression and mode-1 multiplier
// quadrature), and the critical period L0 where it crosses zero.

#include "fyamabe/minimize.hpp"

#include <utility>
#include <vector>

namespace fyamabe {

enum class BifurcationMethod { gamma, symbol, both };

struct BifurcationResult {
    double L0_gamma_formula = 0.0; ///< NaN when not requested
    double L0_symbol = 0.0;        ///< NaN when not requested
    double lambda0 = 0.0;          ///< L0 = 2 pi / sqrt(lambda0)
    std::vector<std::pair<double, double>> delta_samples; ///< (L, delta_L)
    double agreement = 0.0;        ///< relative gap of the two roots
};

/// delta = S(lambda) - beta c with the cylinder symbol
/// S(lambda) = 2^{2g} |Gamma(n/4+g/2 + i sqrt(lambda)/2)|^2
///                  / |Gamma(n/4-g/2 + i sqrt(lambda)/2)|^2,
/// normalized so S(0) = c_{n,gamma}; lambda = (2 pi / L)^2.
double delta_gamma_formula(const ModelParams& mp, double lambda);

/// delta_L = theta_1(L) - (beta - 1) c, the mode-1 eigenvalue of the
/// linearization, with theta_1 from kernel quadrature.
double delta_symbol(const ModelParams& mp, const Kernel& k, double L);

/// Root of delta over L in [0.1, 100] by bisection to width 1e-8, after a
/// sign check of the bracket.  Throws no_convergence (with a sampled
/// curve in the message) when the bracket does not change sign.
BifurcationResult find_L0(const ModelParams& mp, const Kernel& k,
                          BifurcationMethod method,
                          double L_lo = 0.1, double L_hi = 100.0);

/// Index k >= 1 minimizing theta_k - (beta-1) c; the fundamental mode.
int fundamental_mode(const ModelParams& mp, const SpectralMultipliers& sm);

struct DichotomySide {
    double L = 0.0;
    double c = 0.0;
    double cstar = 0.0;
    Classification classification = Classification::constant;
    double amplitude = 0.0;
    double residual = 0.0;
};

struct DichotomyReport {
    double L0 = 0.0;
    DichotomySide below, above, at_L0;
    bool pass_below = false;  ///< constant minimizer, c = c*
    bool pass_above = false;  ///< nonconstant minimizer, c < c*
    bool pass_at_L0 = false;  ///< constant within amplitude 1e-4
    bool pass = false;
};

/// Solves at L_below, L_above and at the critical period itself and
/// checks the dichotomy around L0.
DichotomyReport verify_dichotomy(const ModelParams& mp, const Kernel& k,
                                 const SolveConfig& cfg, double L_below,
                                 double L_above);

} // namespace fyamabe

#endif
