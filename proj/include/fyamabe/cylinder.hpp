#ifndef FYAMABE_CYLINDER_HPP
#define FYAMABE_CYLINDER_HPP

// Discretized variational objects on the cylinder: spectral multipliers
// of the nonlocal quadratic form, the energy quotient and energies, the
// Euler-Lagrange residual, the normalization identity A = c_{n,gamma},
// and the ground-state bubble.

#include "fyamabe/kernel.hpp"

#include <span>
#include <utility>
#include <vector>

namespace fyamabe {

/// L-periodic profile sampled at t_j = j L / N, j = 0..N-1.
struct PeriodicProfile {
    double L = 0.0;
    int N = 0;
    std::vector<double> values;
};

/// Fourier-side eigenvalues theta_k of the nonlocal quadratic form,
/// theta_k = kappa * int_R (1 - cos(2 pi k xi / L)) K(xi) dxi, k = 0..N/2.
struct SpectralMultipliers {
    double L = 0.0;
    int N = 0;
    std::vector<double> theta;
};

/// Terms of the energy quotient.  `quadratic` is the operator pairing
/// (kappa/2) * iint (v(t)-v(tau))^2 K_L dt dtau (each unordered pair of
/// points counted once), so that
///   F_value = (quadratic + mass) / nonlinear^{2/(beta+1)}
/// and the quotient's critical points solve the Euler-Lagrange equation
/// with the single convolution term.  quadratic_form() below returns the
/// full symmetrized double integral, i.e. exactly 2 * quadratic.
struct EnergyBreakdown {
    double quadratic = 0.0; ///< (kappa/2) iint (v-v)^2 K_L
    double mass = 0.0;      ///< c \int v^2
    double nonlinear = 0.0; ///< \int |v|^{beta+1}
    double F_value = 0.0;   ///< energy quotient
    double E_value = 0.0;   ///< free energy (quadratic+mass)/2 - c/(beta+1) nonlinear
};

/// theta(mu) = kappa * int_R (1 - cos(mu xi)) K(xi) dxi for a single
/// frequency; absolute accuracy ~1e-12.
double symbol_theta(const ModelParams& mp, const Kernel& k, double mu);

/// Multiplier table for the grid (L, N): theta[k], k = 0..N/2.
SpectralMultipliers compute_multipliers(const ModelParams& mp, const Kernel& k,
                                        double L, int N);

/// kappa * iint_0^L (v(t)-v(tau))^2 K_L(t-tau) dt dtau, evaluated
/// spectrally as 2L sum_k m_k theta_k |vhat_k|^2.
double quadratic_form(const SpectralMultipliers& sm, const PeriodicProfile& p);

/// Same double integral by the O(N^2) singularity-corrected Riemann sum;
/// the independent cross-check for quadratic_form.
double quadratic_form_direct(const ModelParams& mp, const Kernel& k,
                             const PeriodicProfile& p);

/// Energy quotient and its parts.  Scale-invariant: F(lambda v) = F(v).
/// `pad_nonlinear` evaluates the nonlinear integral on a 2x zero-padded
/// grid (dealiased); the default rectangle rule is spectrally accurate
/// for smooth profiles.
EnergyBreakdown functional_F(const ModelParams& mp,
                             const SpectralMultipliers& sm,
                             const PeriodicProfile& p,
                             bool pad_nonlinear = false);

/// Residual of the Euler-Lagrange equation L_gamma v = c v^beta on the
/// grid, assembled spectrally: rhat_k = (theta_k + c) vhat_k - c (v^beta)hat_k.
/// Requires a strictly positive profile.  Returns the residual grid and
/// its sup-norm.
std::pair<std::vector<double>, double>
el_residual(const ModelParams& mp, const SpectralMultipliers& sm,
            const PeriodicProfile& p);

/// A = kappa int_0^infty 2 (cosh(sigma xi) - 1) K(xi) dxi, the operator's
/// action on the constant; equals c_{n,gamma}.
double normalization_constant_A(const ModelParams& mp, const Kernel& k);

/// Ground-state bubble b(t) = (e^t / (e^{2t}+1))^{(n-2 gamma)/2},
/// evaluated in the log domain so it is finite for all t.
double bubble(const ModelParams& mp, double t);

/// Amplitude making amp * b(t) an exact solution of the line equation
/// L_gamma v = c_{n,gamma} v^beta.
double bubble_solution_amplitude(const ModelParams& mp);

/// Sup over t_points of the line Euler-Lagrange residual of the
/// amplitude-normalized bubble; the principal value is realized by the
/// symmetrized second difference.  `tol` steers the quadrature effort.
double bubble_residual(const ModelParams& mp, const Kernel& k,
                       std::span<const double> t_points, double tol = 1e-10);

/// Weak-form pairing <L_gamma v, phi> assembled spectrally.
double weak_pairing(const ModelParams& mp, const SpectralMultipliers& sm,
                    const PeriodicProfile& v, const PeriodicProfile& phi);

} // namespace fyamabe

#endif
