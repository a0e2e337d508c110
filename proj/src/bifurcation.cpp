#include "fyamabe/bifurcation.hpp"
#include "fyamabe/errors.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <sstream>

namespace fyamabe {

double delta_gamma_formula(const ModelParams& mp, double lambda)
{
    if (lambda < 0.0)
        throw domain_error("delta_gamma_formula: lambda must be >= 0");
    const double y = 0.5 * std::sqrt(lambda);
    const double a = 0.25 * mp.n + 0.5 * mp.gamma;
    const double b = 0.25 * mp.n - 0.5 * mp.gamma;
    const double S = std::pow(2.0, 2.0 * mp.gamma) *
                     std::exp(2.0 * (specfun::log_abs_gamma(a, y) -
                                     specfun::log_abs_gamma(b, y)));
    return S - mp.beta * mp.c_ngamma;
}

double delta_symbol(const ModelParams& mp, const Kernel& k, double L)
{
    if (L <= 0.0)
        throw domain_error("delta_symbol: L must be positive");
    return symbol_theta(mp, k, 2.0 * M_PI / L) -
           (mp.beta - 1.0) * mp.c_ngamma;
}

namespace {

double bisect_root(const std::function<double(double)>& delta, double lo,
                   double hi)
{
    double flo = delta(lo), fhi = delta(hi);
    if (!(flo > 0.0 && fhi < 0.0)) {
        std::ostringstream os;
        os << "find_L0: delta does not change sign on [" << lo << ", " << hi
           << "]; samples:";
        for (int i = 0; i < 8; ++i) {
            const double L = lo * std::pow(hi / lo, i / 7.0);
            os << " (" << L << ", " << delta(L) << ")";
        }
        throw no_convergence(os.str());
    }
    while (hi - lo > 1e-8) {
        const double mid = 0.5 * (lo + hi);
        if (delta(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

BifurcationResult find_L0(const ModelParams& mp, const Kernel& k,
                          BifurcationMethod method, double L_lo, double L_hi)
{
    const double nan = std::numeric_limits<double>::quiet_NaN();
    BifurcationResult res;
    res.L0_gamma_formula = nan;
    res.L0_symbol = nan;
    res.agreement = nan;

    auto delta_g = [&](double L) {
        const double mu = 2.0 * M_PI / L;
        return delta_gamma_formula(mp, mu * mu);
    };
    auto delta_s = [&](double L) { return delta_symbol(mp, k, L); };

    const bool want_g = method != BifurcationMethod::symbol;
    const bool want_s = method != BifurcationMethod::gamma;

    if (want_g)
        res.L0_gamma_formula = bisect_root(delta_g, L_lo, L_hi);
    if (want_s)
        res.L0_symbol = bisect_root(delta_s, L_lo, L_hi);

    const double L0 = want_g ? res.L0_gamma_formula : res.L0_symbol;
    const double mu0 = 2.0 * M_PI / L0;
    res.lambda0 = mu0 * mu0;
    if (want_g && want_s)
        res.agreement =
            std::abs(res.L0_gamma_formula - res.L0_symbol) / res.L0_gamma_formula;

    // sampled curve around the root, on the cheaper route when available
    const double s_lo = std::max(L_lo, 0.4 * L0);
    const double s_hi = std::min(L_hi, 3.0 * L0);
    for (int i = 0; i < 21; ++i) {
        const double L = s_lo * std::pow(s_hi / s_lo, i / 20.0);
        res.delta_samples.emplace_back(L, want_g ? delta_g(L) : delta_s(L));
    }
    return res;
}

int fundamental_mode(const ModelParams& mp, const SpectralMultipliers& sm)
{
    int best = 1;
    double best_val = std::numeric_limits<double>::infinity();
    for (int k = 1; k <= sm.N / 2; ++k) {
        const double val = sm.theta[k] - (mp.beta - 1.0) * mp.c_ngamma;
        if (val < best_val) {
            best_val = val;
            best = k;
        }
    }
    return best;
}

DichotomyReport verify_dichotomy(const ModelParams& mp, const Kernel& k,
                                 const SolveConfig& cfg, double L_below,
                                 double L_above)
{
    if (!(L_below > 0.0) || !(L_above > L_below))
        throw domain_error("verify_dichotomy: need 0 < L_below < L_above");

    DichotomyReport rep;
    rep.L0 = find_L0(mp, k, BifurcationMethod::both).L0_gamma_formula;
    if (!(L_below < rep.L0 && rep.L0 < L_above))
        throw domain_error("verify_dichotomy: [L_below, L_above] does not "
                           "bracket the critical period");

    auto side = [&](double L) {
        MinimizeResult r = minimize_F(mp, k, L, cfg);
        DichotomySide s;
        s.L = L;
        s.c = r.c_value;
        s.cstar = r.cstar_value;
        s.classification = r.classification;
        s.amplitude = r.amplitude;
        s.residual = r.residual;
        return s;
    };

    rep.below = side(L_below);
    rep.above = side(L_above);
    rep.at_L0 = side(rep.L0);

    rep.pass_below = rep.below.classification == Classification::constant &&
                     std::abs(rep.below.c - rep.below.cstar) <=
                         1e-9 * rep.below.cstar;
    rep.pass_above = rep.above.classification == Classification::nonconstant &&
                     rep.above.c < rep.above.cstar;
    rep.pass_at_L0 = rep.at_L0.amplitude <= 1e-4;
    rep.pass = rep.pass_below && rep.pass_above && rep.pass_at_L0;
    return rep;
}

} // namespace fyamabe
