#include "fyamabe/kernel.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace fyamabe {

void Kernel::init()
{
    degenerate_ = specfun::hyp2f1_transform_degenerate(kp_.f);
    kappa0_ = kp_.c_n * specfun::hyp2f1_at_one(kp_.f);
    tail_coeff_ = kp_.c_n * std::pow(2.0, kp_.tail_rate);
}

double Kernel::closed(double xi) const
{
    xi = std::abs(xi); // K is even
    if (xi == 0.0)
        throw domain_error("kernel: singular at xi = 0");
    const double g = mp_.gamma;
    const double ec = 0.5 * (2.0 - mp_.n + 2.0 * g);
    if (xi < 30.0) {
        const double ch = std::cosh(xi);
        const double z = 1.0 / (ch * ch); // sech^2
        return kp_.c_n * std::pow(std::sinh(xi), -1.0 - 2.0 * g) *
               std::pow(ch, ec) * specfun::hyp2f1(kp_.f, z);
    }
    // log-domain evaluation; F(sech^2 xi) = 1 + O(e^{-2 xi})
    const double log_sinh = xi - M_LN2 + std::log1p(-std::exp(-2.0 * xi));
    const double log_cosh = xi - M_LN2 + std::log1p(std::exp(-2.0 * xi));
    const double z = std::exp(-2.0 * log_cosh);
    return std::exp(std::log(kp_.c_n) + (-1.0 - 2.0 * g) * log_sinh +
                    ec * log_cosh) *
           specfun::hyp2f1(kp_.f, z);
}

double Kernel::direct(double xi, double tol) const
{
    xi = std::abs(xi);
    if (xi == 0.0)
        throw domain_error("kernel: singular at xi = 0");
    const double q = kp_.tail_rate;
    const double he = 0.5 * (mp_.n - 3.0);
    const double d = 2.0 * std::pow(std::sinh(0.5 * xi), 2.0); // cosh(xi)-1

    // Sphere integral in the variable w = cosh(xi) - <theta,sigma> shifted
    // to w in (0,2):  I = int_0^2 [w(2-w)]^he (d+w)^{-q} dw.  Splitting at
    // w = 1 and substituting w = y^2 (resp. 2-w = y^2) turns the endpoint
    // weights into the polynomial y^{n-2}; both halves are then analytic,
    // with a peak of width sqrt(d) at y = 0 of the first half.
    auto f_near = [&](double y) {
        const double y2 = y * y;
        return 2.0 * std::pow(y, mp_.n - 2.0) * std::pow(2.0 - y2, he) *
               std::pow(d + y2, -q);
    };
    auto f_far = [&](double y) {
        const double y2 = y * y;
        return 2.0 * std::pow(y, mp_.n - 2.0) * std::pow(2.0 - y2, he) *
               std::pow(d + 2.0 - y2, -q);
    };

    const double w0 = std::sqrt(std::min(d, 1.0));
    double sum = 0.0, scale = 0.0;
    int panels = 0;
    auto accumulate = [&](const quad::Fn& f, double a, double b, int pass) {
        if (pass == 0) {
            scale += std::abs(quad::gl_panel(f, a, b));
            ++panels;
        } else {
            sum += quad::adaptive(f, a, b, std::max(tol, tol * scale) / panels,
                                  tol);
        }
    };
    for (int pass = 0; pass < 2; ++pass) {
        accumulate(f_near, 0.0, w0, pass);
        if (w0 < 1.0)
            accumulate(f_near, w0, 1.0, pass);
        accumulate(f_far, 0.0, 1.0, pass);
    }
    return kp_.cbar_n * std::pow(2.0, -q) * sum;
}

double Kernel::value(double xi) const
{
    if (!degenerate_)
        return closed(xi);
    // the transformation is only needed where sech^2 xi > 1/2
    if (std::abs(xi) > 0.8814)
        return closed(xi);
    return direct(xi, 1e-12);
}

double Kernel::log_value(double xi) const
{
    xi = std::abs(xi);
    if (xi == 0.0)
        throw domain_error("kernel: singular at xi = 0");
    if (xi <= 30.0)
        return std::log(value(xi));
    const double g = mp_.gamma;
    const double ec = 0.5 * (2.0 - mp_.n + 2.0 * g);
    const double log_sinh = xi - M_LN2 + std::log1p(-std::exp(-2.0 * xi));
    const double log_cosh = xi - M_LN2 + std::log1p(std::exp(-2.0 * xi));
    const double z = std::exp(-2.0 * log_cosh);
    return std::log(kp_.c_n) + (-1.0 - 2.0 * g) * log_sinh + ec * log_cosh +
           std::log(specfun::hyp2f1(kp_.f, z));
}

double Kernel::periodized(double L, double xi, double tol) const
{
    if (L <= 0.0)
        throw domain_error("periodized kernel: L must be positive");
    const double q = kp_.tail_rate;
    // nearest-lattice representative in [-L/2, L/2]
    const double xs = xi - L * std::round(xi / L);
    if (std::abs(xs) < 1e-12 * std::max(1.0, L))
        throw domain_error("periodized kernel: xi lies on the lattice {jL}");

    // tail constant calibrated from K at distance L/2
    const double C = value(0.5 * L) * std::exp(q * 0.5 * L);
    const double geo = -std::expm1(-q * L); // 1 - e^{-qL}
    double J = std::ceil(std::log(std::max(2.0 * C / (geo * tol), 2.0)) /
                         (q * L));
    const int Ji = static_cast<int>(std::clamp(J, 2.0, 1e6));

    double sum = 0.0; // far terms first
    for (int j = Ji; j >= 1; --j)
        sum += value(xs - j * L) + value(xs + j * L);
    sum += value(xs);
    return sum;
}

double Kernel::singular_strength_extrapolated() const
{
    const double g = mp_.gamma;
    const double e = kp_.sing_exponent;
    double p = std::min(2.0, 1.0 + 2.0 * g);
    double q = std::max(2.0, 1.0 + 2.0 * g);
    if (std::abs(p - q) < 0.05)
        p = q = 2.0; // near the log case both corrections behave like h^2

    const double h[3] = {1e-2, 5e-3, 2.5e-3};
    double G[3];
    for (int i = 0; i < 3; ++i)
        G[i] = value(h[i]) * std::pow(h[i], e);

    const double tp = std::pow(2.0, p);
    const double E1a = (tp * G[1] - G[0]) / (tp - 1.0);
    const double E1b = (tp * G[2] - G[1]) / (tp - 1.0);
    const double tq = std::pow(2.0, q);
    const double E2 = (tq * E1b - E1a) / (tq - 1.0);
    if (std::abs(E2 - E1b) > 1e-4 * std::abs(E2))
        throw no_convergence("singular strength extrapolation did not settle",
                             std::abs(E2 - E1b) / std::abs(E2));
    return E2;
}

ScalingReport check_scaling_inequality(const Kernel& k, double L, double L1,
                                       int samples)
{
    if (L1 <= 0.0 || L < L1 || samples < 2)
        throw domain_error("check_scaling_inequality: need L >= L1 > 0, samples >= 2");

    ScalingReport rep;
    rep.samples = samples;
    rep.degenerate_input = (L == L1);

    const double tol = 1e-12;
    double worst = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double xi = L1 * (i + 0.5) / samples;
        const double lhs = (L / L1) * k.periodized(L, (L / L1) * xi, tol);
        const double rhs = k.periodized(L1, xi, tol);
        worst = std::min(worst, (rhs - lhs) / rhs);
    }
    rep.worst_scaling_margin = worst;
    rep.scaling_pass = !rep.degenerate_input && worst > 0.0;

    // xi * K(xi) strictly decreasing on a log grid
    const int npts = 200;
    const double lo = 1e-3, hi = 30.0;
    double prev = 0.0, worst_drop = std::numeric_limits<double>::infinity();
    for (int i = 0; i < npts; ++i) {
        const double xi = lo * std::pow(hi / lo, i / (npts - 1.0));
        const double m = xi * k.value(xi);
        if (i > 0)
            worst_drop = std::min(worst_drop, (prev - m) / prev);
        prev = m;
    }
    rep.worst_monotone_drop = worst_drop;
    rep.monotone_pass = worst_drop > 0.0;

    rep.pass = rep.scaling_pass && rep.monotone_pass;
    return rep;
}

} // namespace fyamabe
