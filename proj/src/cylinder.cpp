#include "fyamabe/cylinder.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/fft.hpp"
#include "fyamabe/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace fyamabe {

namespace {

void validate_profile(const PeriodicProfile& p)
{
    if (p.L <= 0.0)
        throw domain_error("profile: period must be positive");
    if (p.N < 8 || (p.N & (p.N - 1)) != 0)
        throw domain_error("profile: N must be a power of two, N >= 8");
    if (static_cast<int>(p.values.size()) != p.N)
        throw domain_error("profile: values.size() != N");
}

void check_shapes(const SpectralMultipliers& sm, const PeriodicProfile& p)
{
    validate_profile(p);
    if (sm.N != p.N || sm.L != p.L)
        throw domain_error("multiplier table and profile shapes differ");
}

// int_0^eps (1 - cos(mu xi)) xi^{-1-2g} dxi as an alternating series in
// (mu eps)^2; used for the singular stub of the multiplier integrals.
double stub_one_minus_cos(double mu, double eps, double g)
{
    double sum = 0.0, fact = 1.0;
    const double me2 = mu * mu;
    double mu_pow = 1.0;
    for (int m = 1; m <= 60; ++m) {
        fact *= (2.0 * m - 1.0) * (2.0 * m);
        mu_pow *= me2;
        const double term = ((m & 1) ? 1.0 : -1.0) * mu_pow *
                            std::pow(eps, 2.0 * m - 2.0 * g) /
                            (fact * (2.0 * m - 2.0 * g));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum))
            break;
    }
    return sum;
}

// int_0^eps 2 (cosh(s xi) - 1) xi^{-1-2g} dxi, same scheme (all terms positive).
double stub_cosh_minus_one(double s, double eps, double g)
{
    double sum = 0.0, fact = 1.0;
    const double s2 = s * s;
    double s_pow = 1.0;
    for (int m = 1; m <= 60; ++m) {
        fact *= (2.0 * m - 1.0) * (2.0 * m);
        s_pow *= s2;
        const double term = 2.0 * s_pow *
                            std::pow(eps, 2.0 * m - 2.0 * g) /
                            (fact * (2.0 * m - 2.0 * g));
        sum += term;
        if (term < 1e-17 * sum)
            break;
    }
    return sum;
}

constexpr double stub_eps = 9.313225746154785e-10; // 2^-30

} // namespace

double symbol_theta(const ModelParams& mp, const Kernel& k, double mu)
{
    if (mu == 0.0)
        return 0.0;
    mu = std::abs(mu);
    const double g = mp.gamma;
    const double q = k.params().tail_rate;

    // [0, eps]: local model K ~ kappa0 xi^{-1-2g}; the dropped correction
    // is O(eps^{min(2, 1+2g)}) relative to the stub itself.
    double eta = k.singular_strength() * stub_one_minus_cos(mu, stub_eps, g);

    auto f = [&](double xi) {
        const double s = std::sin(0.5 * mu * xi);
        return 2.0 * s * s * k.value(xi);
    };

    // (eps, 1]: dyadic panels toward the singularity
    auto bp = quad::dyadic_down(stub_eps, 1.0);
    std::reverse(bp.begin(), bp.end());
    eta += quad::over_breakpoints(f, bp, mu);

    // (1, T]: exponential tail, T from K <= C_inf e^{-q xi}
    const double T = std::clamp(
        std::log(4.0 * k.tail_coefficient() / (q * 1e-14)) / q, 5.0, 300.0);
    std::vector<double> out_bp;
    for (double x = 1.0; x < T; x += 1.0)
        out_bp.push_back(x);
    out_bp.push_back(T);
    eta += quad::over_breakpoints(f, out_bp, mu);

    return 2.0 * mp.kappa_ngamma * eta;
}

SpectralMultipliers compute_multipliers(const ModelParams& mp, const Kernel& k,
                                        double L, int N)
{
    if (L <= 0.0 || N < 8)
        throw domain_error("compute_multipliers: need L > 0 and N >= 8");
    SpectralMultipliers sm;
    sm.L = L;
    sm.N = N;
    sm.theta.resize(N / 2 + 1);
    sm.theta[0] = 0.0;
    for (int kk = 1; kk <= N / 2; ++kk)
        sm.theta[kk] = symbol_theta(mp, k, 2.0 * M_PI * kk / L);
    return sm;
}

namespace {

// mode weights: 1 for k = 0 and k = N/2, 2 otherwise
inline double multiplicity(int k, int N) { return (k == 0 || k == N / 2) ? 1.0 : 2.0; }

struct Spectrum {
    std::vector<std::complex<double>> vhat;
};

Spectrum spectrum_of(const PeriodicProfile& p)
{
    RealFourier fft(p.N);
    Spectrum s;
    s.vhat.resize(p.N / 2 + 1);
    fft.forward(p.values.data(), s.vhat.data());
    return s;
}

} // namespace

double quadratic_form(const SpectralMultipliers& sm, const PeriodicProfile& p)
{
    check_shapes(sm, p);
    const auto s = spectrum_of(p);
    double sum = 0.0;
    for (int k = p.N / 2; k >= 1; --k)
        sum += multiplicity(k, p.N) * sm.theta[k] * std::norm(s.vhat[k]);
    return 2.0 * p.L * sum;
}

double quadratic_form_direct(const ModelParams& mp, const Kernel& k,
                             const PeriodicProfile& p)
{
    validate_profile(p);
    const int N = p.N;
    const double h = p.L / N;
    const double g = mp.gamma;
    const double kap0 = k.singular_strength();
    auto KLf = [&](double eta) { return k.periodized(p.L, eta, 1e-13); };

    // Cell structure: for each t_i the inner integral over eta = t - tau
    // is split into cells of width h centered at the grid separations.
    //
    // Singular cell |eta| < h/2: squared linear-interpolant difference
    // against K_L; the kappa0 |eta|^{-1-2g} part integrates in closed form
    // and the remainder is regular.
    double W0 = 2.0 * kap0 * std::pow(0.5 * h, 2.0 - 2.0 * g) / (2.0 - 2.0 * g);
    {
        auto rem = [&](double eta) {
            return eta * eta *
                   (KLf(eta) - kap0 * std::pow(eta, -1.0 - 2.0 * g));
        };
        // below 1e-3 h the remainder integrand is O(eta^2) and the
        // subtraction starts to cancel; the dropped piece is O((1e-3 h)^3)
        auto bp = quad::dyadic_down(1e-3 * h, 0.5 * h);
        std::reverse(bp.begin(), bp.end());
        W0 += 2.0 * quad::over_breakpoints(rem, bp);
    }

    // Near-diagonal cells 1 <= m <= band: product integration of the
    // quadratic interpolant of (v(t_i) - v(t_i - eta))^2 through the
    // values at eta = (m-1)h, mh, (m+1)h against the exact kernel.
    const int band = std::min(3, N / 2 - 2);
    std::vector<double> Wa(band + 1), Wb(band + 1), Wc(band + 1);
    for (int m = 1; m <= band; ++m) {
        const double a = (m - 1) * h, b = m * h, c = (m + 1) * h;
        auto la = [&](double e) { return (e - b) * (e - c) / (2.0 * h * h) * KLf(e); };
        auto lb = [&](double e) { return -(e - a) * (e - c) / (h * h) * KLf(e); };
        auto lc = [&](double e) { return (e - a) * (e - b) / (2.0 * h * h) * KLf(e); };
        Wa[m] = quad::gl_split(la, b - 0.5 * h, b + 0.5 * h, 8);
        Wb[m] = quad::gl_split(lb, b - 0.5 * h, b + 0.5 * h, 8);
        Wc[m] = quad::gl_split(lc, b - 0.5 * h, b + 0.5 * h, 8);
    }

    // far cells: midpoint value of K_L at the grid separation
    std::vector<double> KL(N / 2 + 1, 0.0);
    for (int m = band + 1; m <= N / 2; ++m)
        KL[m] = KLf(m * h);

    const auto& v = p.values;
    auto diff2 = [&](int i, int j) {
        const double d = v[i] - v[(j % N + N) % N];
        return d * d;
    };

    double sum = 0.0;
    for (int i = 0; i < N; ++i) {
        // quadratic interpolant of the squared difference through
        // eta = -h, 0, h; only its even part meets the symmetric cell
        const double inner0 =
            0.5 * (diff2(i, i + 1) + diff2(i, i - 1)) / (h * h);
        double inner = inner0 * W0;
        for (int m = 1; m <= band; ++m) {
            inner += Wa[m] * diff2(i, i - (m - 1)) + Wb[m] * diff2(i, i - m) +
                     Wc[m] * diff2(i, i - (m + 1));
            inner += Wa[m] * diff2(i, i + (m - 1)) + Wb[m] * diff2(i, i + m) +
                     Wc[m] * diff2(i, i + (m + 1));
        }
        for (int m = band + 1; m < N - band; ++m) {
            const int d = std::min(m, N - m);
            if (d <= band)
                continue;
            inner += h * KL[d] * diff2(i, i - m);
        }
        sum += inner;
    }
    return mp.kappa_ngamma * h * sum;
}

namespace {

double nonlinear_integral(const ModelParams& mp, const PeriodicProfile& p,
                          bool pad)
{
    const double expo = mp.beta + 1.0;
    if (!pad) {
        double s = 0.0;
        for (double v : p.values)
            s += std::pow(std::abs(v), expo);
        return s * p.L / p.N;
    }
    // evaluate |v|^{beta+1} on the 2x zero-padded trigonometric interpolant
    const int N = p.N, M = 2 * N;
    RealFourier fft(N), fft2(M);
    std::vector<std::complex<double>> vhat(N / 2 + 1), big(M / 2 + 1, 0.0);
    fft.forward(p.values.data(), vhat.data());
    for (int k = 0; k < N / 2; ++k)
        big[k] = vhat[k];
    big[N / 2] = 0.5 * vhat[N / 2]; // Nyquist coefficient splits on upsampling
    std::vector<double> fine(M);
    fft2.inverse(big.data(), fine.data());
    double s = 0.0;
    for (double v : fine)
        s += std::pow(std::abs(v), expo);
    return s * p.L / M;
}

} // namespace

EnergyBreakdown functional_F(const ModelParams& mp,
                             const SpectralMultipliers& sm,
                             const PeriodicProfile& p, bool pad_nonlinear)
{
    check_shapes(sm, p);
    const bool all_zero =
        std::all_of(p.values.begin(), p.values.end(),
                    [](double v) { return v == 0.0; });
    if (all_zero)
        throw domain_error("functional_F: zero profile");

    EnergyBreakdown e;
    e.quadratic = 0.5 * quadratic_form(sm, p);
    double s2 = 0.0;
    for (double v : p.values)
        s2 += v * v;
    e.mass = mp.c_ngamma * s2 * p.L / p.N;
    e.nonlinear = nonlinear_integral(mp, p, pad_nonlinear);
    e.F_value = (e.quadratic + e.mass) /
                std::pow(e.nonlinear, 2.0 / (mp.beta + 1.0));
    e.E_value = 0.5 * (e.quadratic + e.mass) -
                mp.c_ngamma / (mp.beta + 1.0) * e.nonlinear;
    return e;
}

std::pair<std::vector<double>, double>
el_residual(const ModelParams& mp, const SpectralMultipliers& sm,
            const PeriodicProfile& p)
{
    check_shapes(sm, p);
    for (double v : p.values)
        if (!(v > 0.0))
            throw domain_error("el_residual: profile must be strictly positive");

    const int N = p.N;
    RealFourier fft(N);
    std::vector<std::complex<double>> vhat(N / 2 + 1), what(N / 2 + 1);
    std::vector<double> w(N);
    fft.forward(p.values.data(), vhat.data());
    for (int j = 0; j < N; ++j)
        w[j] = std::pow(p.values[j], mp.beta);
    fft.forward(w.data(), what.data());

    const double c = mp.c_ngamma;
    for (int k = 0; k <= N / 2; ++k)
        vhat[k] = (sm.theta[k] + c) * vhat[k] - c * what[k];

    std::vector<double> r(N);
    fft.inverse(vhat.data(), r.data());
    double sup = 0.0;
    for (double x : r)
        sup = std::max(sup, std::abs(x));
    return {std::move(r), sup};
}

double normalization_constant_A(const ModelParams& mp, const Kernel& k)
{
    const double g = mp.gamma;
    const double s = mp.sigma; // (n-2g)/2 < tail_rate, so the tail converges
    double integral =
        k.singular_strength() * stub_cosh_minus_one(s, stub_eps, g);

    auto f = [&](double xi) {
        const double a = s * xi;
        if (a < 300.0) {
            const double sh = std::sinh(0.5 * a);
            return 4.0 * sh * sh * k.value(xi);
        }
        return std::exp(a + k.log_value(xi)); // 2(cosh a - 1) ~ e^a
    };

    auto bp = quad::dyadic_down(stub_eps, 1.0);
    std::reverse(bp.begin(), bp.end());
    integral += quad::over_breakpoints(f, bp);

    const double rate = 2.0 * g; // decay of e^{sigma xi} K(xi)
    const double T = std::clamp(
        (std::log(k.tail_coefficient()) + 34.0) / rate, 10.0, 800.0);
    std::vector<double> out_bp;
    for (double x = 1.0; x < T; x += 1.0)
        out_bp.push_back(x);
    out_bp.push_back(T);
    integral += quad::over_breakpoints(f, out_bp);

    return mp.kappa_ngamma * integral;
}

double bubble(const ModelParams& mp, double t)
{
    const double at = std::abs(t);
    return std::exp(-mp.sigma * (at + std::log1p(std::exp(-2.0 * at))));
}

double bubble_solution_amplitude(const ModelParams& mp)
{
    const double S = std::pow(2.0, 2.0 * mp.gamma) *
                     specfun::gamma_real(0.5 * mp.n + mp.gamma) /
                     specfun::gamma_real(0.5 * mp.n - mp.gamma);
    return std::pow(S / mp.c_ngamma, 1.0 / (mp.beta - 1.0));
}

double bubble_residual(const ModelParams& mp, const Kernel& k,
                       std::span<const double> t_points, double tol)
{
    const double g = mp.gamma;
    const double q = k.params().tail_rate;
    const double amp = bubble_solution_amplitude(mp);
    const double eps = (tol <= 1e-8) ? 1e-4 : 1e-3;
    const int order = (tol <= 1e-8) ? 20 : 8;

    const double T = std::clamp(
        std::log(8.0 * amp * k.tail_coefficient() / (q * tol)) / q, 10.0, 200.0);

    double sup = 0.0;
    for (double t : t_points) {
        const double bt = amp * bubble(mp, t);
        const double u = std::tanh(t);
        const double b2 = bt * mp.sigma * ((mp.sigma + 1.0) * u * u - 1.0);

        // [0, eps]: second difference ~ -b''(t) s^2 against the local model
        double integral = -b2 * k.singular_strength() *
                          std::pow(eps, 2.0 - 2.0 * g) / (2.0 - 2.0 * g);

        auto f = [&](double s) {
            return (2.0 * bt - amp * bubble(mp, t + s) -
                    amp * bubble(mp, t - s)) *
                   k.value(s);
        };
        auto bp = quad::dyadic_down(eps, 1.0);
        std::reverse(bp.begin(), bp.end());
        integral += quad::over_breakpoints(f, bp, 0.0, order);
        std::vector<double> out_bp;
        for (double x = 1.0; x < T; x += 1.0)
            out_bp.push_back(x);
        out_bp.push_back(T);
        integral += quad::over_breakpoints(f, out_bp, 0.0, order);

        const double r = mp.kappa_ngamma * integral + mp.c_ngamma * bt -
                         mp.c_ngamma * std::pow(bt, mp.beta);
        sup = std::max(sup, std::abs(r));
    }
    return sup;
}

double weak_pairing(const ModelParams& mp, const SpectralMultipliers& sm,
                    const PeriodicProfile& v, const PeriodicProfile& phi)
{
    check_shapes(sm, v);
    check_shapes(sm, phi);
    RealFourier fft(v.N);
    std::vector<std::complex<double>> vh(v.N / 2 + 1), ph(v.N / 2 + 1);
    fft.forward(v.values.data(), vh.data());
    fft.forward(phi.values.data(), ph.data());
    double sum = 0.0;
    for (int k = 0; k <= v.N / 2; ++k)
        sum += multiplicity(k, v.N) * (sm.theta[k] + mp.c_ngamma) *
               (vh[k] * std::conj(ph[k])).real();
    return v.L * sum;
}

} // namespace fyamabe
