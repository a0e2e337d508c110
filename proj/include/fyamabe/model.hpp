#ifndef FYAMABE_MODEL_HPP
#define FYAMABE_MODEL_HPP

// Model parameters of the fractional problem on the cylinder and the
// derived constants of the kernel reduction.

#include "fyamabe/specfun.hpp"

namespace fyamabe {

/// Dimension, fractional order and the derived constants.
struct ModelParams {
    int n;               ///< ambient dimension, n >= 2 + 2*gamma
    double gamma;        ///< fractional order in (0,1)
    double beta;         ///< critical exponent (n+2g)/(n-2g)
    double sigma;        ///< half weight (n-2g)/2
    double c_ngamma;     ///< 2^(2g) * (Gamma((n/2+g)/2)/Gamma((n/2-g)/2))^2
    double kappa_ngamma; ///< fractional-Laplacian normalization constant

    /// Validates n >= 2 + 2*gamma, gamma in (0,1), and fills the constants.
    static ModelParams create(int n, double gamma);

    /// Same constants without the mass assumption n >= 2 + 2*gamma.
    /// Only the Gamma-formula route is meaningful in that regime; used by
    /// the gamma -> 1 limit studies.
    static ModelParams create_relaxed(int n, double gamma);
};

/// Constants of the hypergeometric closed form of the kernel.
struct KernelParams {
    double a, b, c;      ///< a=(n+2g)/2, b=1+g, c=n/2 with a-b+1=c
    double cbar_n;       ///< |S^{n-2}| = 2 pi^{(n-1)/2} / Gamma((n-1)/2)
    double c_n;          ///< closed-form prefactor
    double tail_rate;    ///< (n+2g)/2, exponential decay rate
    double sing_exponent;///< 1+2g, strength of the origin singularity
    specfun::Hyp2F1Params f; ///< (a~, b~, c~) of the 2F1 factor

    static KernelParams create(const ModelParams& mp);
};

} // namespace fyamabe

#endif
