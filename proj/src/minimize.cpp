#include "fyamabe/minimize.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/fft.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

namespace fyamabe {

double constant_energy(const ModelParams& mp, double L)
{
    if (L <= 0.0)
        throw domain_error("constant_energy: L must be positive");
    return mp.c_ngamma * std::pow(L, (mp.beta - 1.0) / (mp.beta + 1.0));
}

PeriodicProfile rescale_profile(const PeriodicProfile& p, double L_new)
{
    if (L_new <= 0.0)
        throw domain_error("rescale_profile: L must be positive");
    PeriodicProfile q = p;
    q.L = L_new;
    return q;
}

namespace {

// Working state of one descent run; owns the transform and the spectra.
class Descent {
public:
    Descent(const ModelParams& mp, const SpectralMultipliers& sm)
        : mp_(mp), sm_(sm), N_(sm.N), L_(sm.L), fft_(sm.N),
          vhat_(sm.N / 2 + 1), what_(sm.N / 2 + 1)
    {
    }

    // int |v|^{beta+1} on the grid
    double nonlinear(const std::vector<double>& v) const
    {
        double s = 0.0;
        for (double x : v)
            s += std::pow(std::abs(x), mp_.beta + 1.0);
        return s * L_ / N_;
    }

    // rescale so the constraint int v^{beta+1} = 1 holds exactly
    void project(std::vector<double>& v) const
    {
        const double I = nonlinear(v);
        if (!(I > 0.0))
            throw domain_error("minimize: profile collapsed to zero");
        const double r = std::pow(I, -1.0 / (mp_.beta + 1.0));
        for (double& x : v)
            x *= r;
    }

    // quotient numerator <L v, v> and the operator image Lv = Op[theta+c] v
    double apply(const std::vector<double>& v, std::vector<double>& Lv)
    {
        fft_.forward(v.data(), vhat_.data());
        double num = 0.0;
        for (int k = 0; k <= N_ / 2; ++k) {
            const double m = (k == 0 || k == N_ / 2) ? 1.0 : 2.0;
            const double sym = sm_.theta[k] + mp_.c_ngamma;
            num += m * sym * std::norm(vhat_[k]);
            what_[k] = sym * vhat_[k];
        }
        Lv.resize(N_);
        fft_.inverse(what_.data(), Lv.data());
        return L_ * num;
    }

    const ModelParams& mp_;
    const SpectralMultipliers& sm_;
    int N_;
    double L_;
    RealFourier fft_;
    std::vector<std::complex<double>> vhat_, what_;
};

struct RunOutcome {
    std::vector<double> v;
    double F = 0.0;
    double residual_sup = 0.0; // of the rescaled equation
    int iterations = 0;
    bool converged = false;
    bool monotone = true;
    int positivity_hits = 0;
};

RunOutcome run_descent(const ModelParams& mp, const SpectralMultipliers& sm,
                       std::vector<double> v, const SolveConfig& cfg)
{
    Descent d(mp, sm);
    const int N = sm.N;
    const double L = sm.L;
    const double c = mp.c_ngamma;
    const double hw = L / N; // grid weight of the discrete inner products

    for (double& x : v)
        x = std::abs(x);
    d.project(v);

    const double alpha0 = 1.0 / (sm.theta[N / 2] + c);
    double alpha = alpha0;

    RunOutcome out;
    std::vector<double> Lv, grad(N), v_new(N), grad_new(N), Lv_new;

    double num = d.apply(v, Lv);
    const double I0 = d.nonlinear(v); // = 1 after projection
    double F = num / std::pow(I0, 2.0 / (mp.beta + 1.0));

    auto fill_gradient = [&](const std::vector<double>& vv,
                             const std::vector<double>& LLv, double FF,
                             std::vector<double>& gg) {
        double sup = 0.0;
        for (int j = 0; j < N; ++j) {
            const double r = LLv[j] - FF * std::pow(vv[j], mp.beta);
            gg[j] = 2.0 * hw * r;
            sup = std::max(sup, std::abs(r));
        }
        return sup; // sup-norm of the unscaled EL residual
    };

    double res_sup = fill_gradient(v, Lv, F, grad);
    const double lam = std::pow(F / c, 1.0 / (mp.beta - 1.0));

    out.v = v;
    out.F = F;
    out.residual_sup = lam * res_sup;
    if (out.residual_sup <= cfg.grad_tol) {
        out.converged = true;
        out.iterations = 1;
        return out;
    }

    int iter = 0;
    for (; iter < cfg.max_iter; ++iter) {
        // trial step with Armijo backtracking on the projected point
        double g2 = 0.0;
        for (int j = 0; j < N; ++j)
            g2 += grad[j] * grad[j];
        g2 *= hw;

        if (cfg.step_rule == StepRule::fixed)
            alpha = alpha0;

        double F_new = 0.0, num_new = 0.0;
        bool accepted = false;
        for (int bt = 0; bt < 60; ++bt) {
            bool flipped = false;
            for (int j = 0; j < N; ++j) {
                double w = v[j] - alpha * grad[j];
                if (w < 0.0) {
                    w = -w; // F(|v|) <= F(v)
                    flipped = true;
                }
                v_new[j] = w;
            }
            if (flipped)
                ++out.positivity_hits;
            try {
                d.project(v_new);
            } catch (const domain_error&) {
                alpha *= 0.5; // collapsed to zero: retry with a smaller step
                continue;
            }
            num_new = d.apply(v_new, Lv_new);
            F_new = num_new;
            if (cfg.step_rule == StepRule::fixed ||
                F_new <= F - 1e-4 * alpha * g2 + 1e-15 * std::abs(F)) {
                accepted = true;
                break;
            }
            alpha *= 0.5;
        }
        if (!accepted)
            break; // stalled; best iterate is flagged below
        if (F_new > F * (1.0 + 1e-12))
            out.monotone = false; // rounding-level jitter is tolerated

        const double res_new = fill_gradient(v_new, Lv_new, F_new, grad_new);

        if (cfg.step_rule == StepRule::spectral_bb) {
            double ss = 0.0, sy = 0.0;
            for (int j = 0; j < N; ++j) {
                const double s = v_new[j] - v[j];
                const double y = grad_new[j] - grad[j];
                ss += s * s;
                sy += s * y;
            }
            alpha = (sy > 0.0)
                        ? std::clamp(ss / sy, 1e-4 * alpha0, 1e6 * alpha0)
                        : alpha0;
        } else if (cfg.step_rule == StepRule::backtracking) {
            alpha = std::min(alpha * 4.0, 1e6 * alpha0);
        }

        v.swap(v_new);
        Lv.swap(Lv_new);
        grad.swap(grad_new);
        F = F_new;

        const double lam_now = std::pow(F / c, 1.0 / (mp.beta - 1.0));
        if (lam_now * res_new <= cfg.grad_tol) {
            out.converged = true;
            out.residual_sup = lam_now * res_new;
            ++iter;
            break;
        }
        out.residual_sup = lam_now * res_new;
    }

    out.v = std::move(v);
    out.F = F;
    out.iterations = std::min(iter + 1, cfg.max_iter);
    return out;
}

std::vector<double> make_init(const ModelParams& mp, InitKind kind, double L,
                              int N, std::uint64_t seed)
{
    std::vector<double> v(N, 1.0);
    switch (kind) {
    case InitKind::constant:
        break;
    case InitKind::cos_perturbed: {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> unif(0.0, 1.0);
        double a[3], ph[3];
        for (int m = 0; m < 3; ++m) {
            a[m] = 1e-3 * unif(rng);
            ph[m] = 2.0 * M_PI * unif(rng);
        }
        for (int j = 0; j < N; ++j) {
            const double x = 2.0 * M_PI * j / N;
            v[j] = 1.0 + 0.05 * std::cos(x);
            for (int m = 0; m < 3; ++m)
                v[j] += a[m] * std::cos((m + 2.0) * x + ph[m]);
        }
        break;
    }
    case InitKind::bubble:
        for (int j = 0; j < N; ++j)
            v[j] = bubble(mp, j * L / N - 0.5 * L) + 1e-12;
        break;
    }
    return v;
}

void phase_normalize(std::vector<double>& v)
{
    const auto it = std::max_element(v.begin(), v.end());
    std::rotate(v.begin(), it, v.end());
}

} // namespace

MinimizeResult minimize_F(const ModelParams& mp, const Kernel& k, double L,
                          const SolveConfig& cfg)
{
    if (L <= 0.0)
        throw domain_error("minimize_F: L must be positive");
    if (cfg.N < 8 || (cfg.N & (cfg.N - 1)) != 0)
        throw domain_error("minimize_F: N must be a power of two, N >= 8");
    if (cfg.inits.empty())
        throw domain_error("minimize_F: no initializations configured");

    const SpectralMultipliers sm = compute_multipliers(mp, k, L, cfg.N);

    RunOutcome best;
    InitKind best_init = cfg.inits.front();
    bool have = false;
    for (InitKind kind : cfg.inits) {
        RunOutcome r = run_descent(
            mp, sm, make_init(mp, kind, L, cfg.N, cfg.seed), cfg);
        if (!have || r.F < best.F) {
            best = std::move(r);
            best_init = kind;
            have = true;
        }
    }

    phase_normalize(best.v);

    MinimizeResult res;
    res.profile = PeriodicProfile{L, cfg.N, std::move(best.v)};
    res.c_value = best.F;
    res.cstar_value = constant_energy(mp, L);
    const auto [mn, mx] = std::minmax_element(res.profile.values.begin(),
                                              res.profile.values.end());
    res.amplitude = *mx - *mn;
    const bool amp_says = res.amplitude > cfg.amp_threshold;
    const bool gap_says =
        res.cstar_value - res.c_value > 1e-9 * res.cstar_value;
    res.classification = (amp_says && gap_says) ? Classification::nonconstant
                                                : Classification::constant;
    res.ambiguous = amp_says != gap_says;
    res.residual = best.residual_sup;
    res.iterations = best.iterations;
    res.init_used = best_init;
    res.converged = best.converged;
    res.monotone = best.monotone;
    res.positivity_projections = best.positivity_hits;
    return res;
}

namespace {

SweepRecord solve_point(const ModelParams& mp, const Kernel& k, double L,
                        const SolveConfig& cfg, bool refined)
{
    SweepRecord rec;
    rec.L = L;
    rec.refined = refined;
    try {
        MinimizeResult r = minimize_F(mp, k, L, cfg);
        rec.c = r.c_value;
        rec.cstar = r.cstar_value;
        rec.classification = r.classification;
        rec.amplitude = r.amplitude;
        rec.residual = r.residual;
        rec.ok = true;
    } catch (const std::exception& e) {
        rec.error = e.what();
    }
    return rec;
}

} // namespace

std::vector<SweepRecord> sweep_L(const ModelParams& mp, const Kernel& k,
                                 std::vector<double> L_values,
                                 const SolveConfig& cfg, double refine_dL,
                                 int threads)
{
    std::sort(L_values.begin(), L_values.end());
    std::vector<SweepRecord> recs(L_values.size());

    threads = std::max(1, threads);
    if (threads == 1 || L_values.size() < 2) {
        for (std::size_t i = 0; i < L_values.size(); ++i)
            recs[i] = solve_point(mp, k, L_values[i], cfg, false);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t)
            pool.emplace_back([&, t] {
                for (std::size_t i = t; i < L_values.size(); i += threads)
                    recs[i] = solve_point(mp, k, L_values[i], cfg, false);
            });
        for (auto& th : pool)
            th.join();
    }

    // bisect classification flips
    std::vector<SweepRecord> extra;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        if (!recs[i].ok || !recs[i + 1].ok)
            continue;
        if (recs[i].classification == recs[i + 1].classification)
            continue;
        double lo = recs[i].L, hi = recs[i + 1].L;
        Classification lo_cls = recs[i].classification;
        while (hi - lo > refine_dL) {
            const double mid = 0.5 * (lo + hi);
            SweepRecord r = solve_point(mp, k, mid, cfg, true);
            extra.push_back(r);
            if (!r.ok)
                break;
            if (r.classification == lo_cls)
                lo = mid;
            else
                hi = mid;
        }
    }
    recs.insert(recs.end(), extra.begin(), extra.end());
    std::sort(recs.begin(), recs.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.L < b.L; });
    return recs;
}

} // namespace fyamabe
