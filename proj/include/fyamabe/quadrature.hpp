#ifndef FYAMABE_QUADRATURE_HPP
#define FYAMABE_QUADRATURE_HPP

// Gauss-Legendre panel quadrature: fixed rules, deterministic panel
// layouts for the singular/oscillatory kernel integrals, and an
// error-driven adaptive scheme for the direct sphere integral.

#include <functional>
#include <vector>

namespace fyamabe::quad {

/// Nodes/weights of an n-point Gauss-Legendre rule on [-1,1].
/// Computed once per order by Newton iteration on the Legendre polynomial.
const std::vector<double>& gl_nodes(int n);
const std::vector<double>& gl_weights(int n);

using Fn = std::function<double(double)>;

/// n-point Gauss-Legendre approximation of the integral over [a,b].
double gl_panel(const Fn& f, double a, double b, int n = 20);

/// Integral over [a,b] split into `parts` equal panels.
double gl_split(const Fn& f, double a, double b, int parts, int n = 20);

/// Globally adaptive Gauss-Legendre integration on [a,b].
/// Error estimate per panel: |whole - (left + right)|.  Stops when the
/// accumulated estimate is below max(abs_tol, rel_tol * |integral|).
/// Throws no_convergence (carrying the achieved estimate) if the depth
/// budget is exhausted first.
double adaptive(const Fn& f, double a, double b, double abs_tol,
                double rel_tol, int max_depth = 48, int n = 20);

/// Panel breakpoints decaying dyadically from b down to a (a > 0):
/// b, b/2, b/4, ..., first point <= a, clipped at a.
std::vector<double> dyadic_down(double a, double b);

/// Integrate f over consecutive breakpoints, subdividing each panel so
/// that no sub-panel spans more than ~5 radians of a frequency-omega
/// oscillation.  Panel order `n` per sub-panel.
double over_breakpoints(const Fn& f, const std::vector<double>& bp,
                        double omega = 0.0, int n = 20);

} // namespace fyamabe::quad

#endif
