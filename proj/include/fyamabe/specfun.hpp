#ifndef FYAMABE_SPECFUN_HPP
#define FYAMABE_SPECFUN_HPP

// Special functions needed by the cylinder kernel and the bifurcation
// formulas: real Gamma, log|Gamma| at complex argument, and the Gauss
// hypergeometric function 2F1 on [0,1] for the parameter family
// produced by the kernel reduction.

namespace fyamabe::specfun {

/// Upper/lower parameters of the 2F1 factor in the kernel closed form.
struct Hyp2F1Params {
    double a_tilde;
    double b_tilde;
    double c_tilde;
};

/// Largest x for which Gamma(x) is representable in double precision.
inline constexpr double gamma_overflow_threshold = 171.624;

/// Gamma(x) for real x, x not a non-positive integer.
/// Lanczos approximation, relative error below 1e-13 on [0.05, 50].
/// Throws domain_error at poles and above gamma_overflow_threshold.
double gamma_real(double x);

/// log(Gamma(x)) for x > 0.
double log_gamma_real(double x);

/// log|Gamma(x + iy)|.  Throws domain_error when y == 0 and x is a
/// non-positive integer.
double log_abs_gamma(double x, double y);

/// 2F1(a~, b~; c~; z) for z in [0,1].
///
/// Direct power series for z <= 1/2; for z > 1/2 the standard linear
/// transformation to argument 1-z.  When c~ - a~ - b~ is within 0.05 of
/// an integer the transformation is degenerate (logarithmic case) and
/// degenerate_parameters is thrown, unless the series terminates (a~ or
/// b~ a non-positive integer), in which case the finite sum is exact for
/// any z.  At z == 1 the Gauss summation theorem is used, valid whenever
/// c~ - a~ - b~ > 0.
///
/// max_terms bounds the series length; exceeding it throws no_convergence.
double hyp2f1(const Hyp2F1Params& p, double z, int max_terms = 10000);

/// 2F1 at z = 1 by Gauss's summation theorem; requires c~ - a~ - b~ > 0.
double hyp2f1_at_one(const Hyp2F1Params& p);

/// True when the z -> 1-z transformation for these parameters falls in
/// the degenerate window |c~ - a~ - b~ - round(...)| < 0.05 and the
/// series does not terminate.
bool hyp2f1_transform_degenerate(const Hyp2F1Params& p);

} // namespace fyamabe::specfun

#endif
