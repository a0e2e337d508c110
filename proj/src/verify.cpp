#include "fyamabe/verify.hpp"
#include "fyamabe/bifurcation.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/fft.hpp"
#include "fyamabe/io.hpp"

#include <Eigen/Dense>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>

namespace fyamabe::verify {

namespace {

using clock_t_ = std::chrono::steady_clock;

struct Check {
    std::ostringstream details;
    bool pass = true;

    // records "name=value (<= bound)" and folds the outcome into `pass`
    void leq(const std::string& name, double value, double bound)
    {
        const bool ok = value <= bound;
        pass = pass && ok;
        details << name << "=" << value << (ok ? " <= " : " !<= ") << bound
                << "; ";
    }
    void is_true(const std::string& name, bool ok)
    {
        pass = pass && ok;
        details << name << (ok ? " ok" : " FAILED") << "; ";
    }
};

double rel_gap(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

// exact cylinder symbol for n=3, gamma=1/2: theta(mu) + c = mu/tanh(pi mu/2)
double exact_symbol_3_half(double mu)
{
    return mu / std::tanh(0.5 * M_PI * mu);
}

CriterionResult run_one(int id, const std::string& name,
                        const std::function<void(Check&)>& body)
{
    CriterionResult r;
    r.id = id;
    r.name = name;
    const auto t0 = clock_t_::now();
    Check c;
    try {
        body(c);
        r.pass = c.pass;
    } catch (const std::exception& e) {
        r.pass = false;
        c.details << "exception: " << e.what();
    }
    r.seconds = std::chrono::duration<double>(clock_t_::now() - t0).count();
    r.details = c.details.str();
    return r;
}

void c1_kernel_closed_form(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double exact = M_PI / std::pow(std::sinh(1.0), 2.0);
    ck.leq("|K_closed(1)-pi/sinh^2(1)|/K", rel_gap(k.closed(1.0), exact), 1e-8);
    ck.leq("closed_vs_direct(xi=1)", rel_gap(k.closed(1.0), k.direct(1.0)),
           1e-8);

    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}}) {
        const Kernel kk(ModelParams::create(n, g));
        double worst = 0.0;
        for (int i = 0; i < 25; ++i) {
            const double xi = 1e-2 * std::pow(20.0 / 1e-2, i / 24.0);
            worst = std::max(worst, rel_gap(kk.closed(xi), kk.direct(xi)));
        }
        std::ostringstream nm;
        nm << "closed_vs_direct(n=" << n << ",g=" << g << ")";
        ck.leq(nm.str(), worst, 1e-8);
    }
}

void c2_asymptotics(Check& ck)
{
    for (auto [n, g] : {std::pair<int, double>{3, 0.5}, {4, 0.3}, {5, 0.7}}) {
        const Kernel k(ModelParams::create(n, g));
        const double kap = k.singular_strength_extrapolated();
        const double near = k.value(1e-3) * std::pow(1e-3, 1.0 + 2.0 * g);
        std::ostringstream nm;
        nm << "(n=" << n << ",g=" << g << ") near-zero";
        ck.leq(nm.str(), std::abs(near - kap) / kap, 1e-3);

        const double h = 0.5;
        const double slope =
            (k.log_value(30.0 + h) - k.log_value(30.0 - h)) / (2.0 * h);
        std::ostringstream nm2;
        nm2 << "(n=" << n << ",g=" << g << ") tail log-slope";
        ck.leq(nm2.str(), std::abs(slope + 0.5 * (n + 2.0 * g)), 1e-3);
    }
}

void c3_monotonicity_scaling(Check& ck)
{
    const Kernel k(ModelParams::create(3, 0.5));
    const auto rep = check_scaling_inequality(k, 6.0, 3.0, 50);
    ck.is_true("scaling (L,L1)=(6,3)", rep.scaling_pass);
    ck.is_true("xiK strictly decreasing", rep.monotone_pass);
    ck.details << "worst_scaling_margin=" << rep.worst_scaling_margin
               << " worst_monotone_drop=" << rep.worst_monotone_drop << "; ";

    const Kernel k2(ModelParams::create(4, 0.3));
    const auto rep2 = check_scaling_inequality(k2, 6.0, 3.0, 10);
    ck.is_true("xiK decreasing (4,0.3)", rep2.monotone_pass);
}

void c4_normalization_identity(Check& ck)
{
    {
        const auto mp = ModelParams::create(3, 0.5);
        const double A = normalization_constant_A(mp, Kernel(mp));
        ck.leq("|A-2/pi| at (3,0.5)", std::abs(A - 2.0 / M_PI), 1e-10);
    }
    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}}) {
        const auto mp = ModelParams::create(n, g);
        const double A = normalization_constant_A(mp, Kernel(mp));
        std::ostringstream nm;
        nm << "|A-c|/c at (" << n << "," << g << ")";
        ck.leq(nm.str(), std::abs(A - mp.c_ngamma) / mp.c_ngamma, 1e-6);
    }
}

void c5_symbol_cross_validation(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    for (double mu : {0.5, 1.0, 2.0, 5.0}) {
        const double exact = exact_symbol_3_half(mu);
        const double via_theta = symbol_theta(mp, k, mu) + mp.c_ngamma;
        const double via_gamma =
            delta_gamma_formula(mp, mu * mu) + mp.beta * mp.c_ngamma;
        std::ostringstream a, b;
        a << "theta+c vs mu*coth (mu=" << mu << ")";
        b << "gamma-ratio vs mu*coth (mu=" << mu << ")";
        ck.leq(a.str(), rel_gap(via_theta, exact), 1e-8);
        ck.leq(b.str(), rel_gap(via_gamma, exact), 1e-8);
    }
}

void c6_bifurcation_period(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const auto res = find_L0(mp, k, BifurcationMethod::both);

    // oracle: root of mu/tanh(pi mu/2) = beta c = 4/pi
    double lo = 0.5, hi = 3.0;
    const double target = mp.beta * mp.c_ngamma;
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (exact_symbol_3_half(mid) < target ? lo : hi) = mid;
    }
    const double L0_oracle = 2.0 * M_PI / (0.5 * (lo + hi));

    ck.leq("|L0-5.1538|", std::abs(res.L0_gamma_formula - 5.1538), 1e-3);
    ck.leq("|L0-L0_oracle|", std::abs(res.L0_gamma_formula - L0_oracle), 1e-6);
    ck.leq("method agreement", res.agreement, 1e-6);

    double prev = std::numeric_limits<double>::infinity();
    for (double g : {0.9, 0.99, 0.999}) {
        const auto mpr = ModelParams::create_relaxed(3, g);
        const Kernel kr(mpr);
        const auto r = find_L0(mpr, kr, BifurcationMethod::gamma);
        const double gap = std::abs(r.L0_gamma_formula - 2.0 * M_PI);
        std::ostringstream nm;
        nm << "|L0(" << g << ")-2pi| decreasing";
        ck.is_true(nm.str(), gap < prev);
        prev = gap;
        if (g == 0.999)
            ck.leq("|L0(0.999)-2pi|/2pi", gap / (2.0 * M_PI), 0.01);
    }
}

void c7_dichotomy(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg;
    cfg.N = 256;

    const double cstar4 = constant_energy(mp, 4.0);
    for (InitKind init :
         {InitKind::constant, InitKind::cos_perturbed, InitKind::bubble}) {
        SolveConfig one = cfg;
        one.inits = {init};
        const auto r = minimize_F(mp, k, 4.0, one);
        std::ostringstream nm;
        nm << "L=4 init " << static_cast<int>(init);
        ck.is_true(nm.str() + " constant",
                   r.classification == Classification::constant);
        ck.leq(nm.str() + " |c-c*|", std::abs(r.c_value - cstar4), 1e-6);
    }

    const auto r8 = minimize_F(mp, k, 8.0, cfg);
    ck.is_true("L=8 nonconstant",
               r8.classification == Classification::nonconstant);
    ck.leq("c(8) <= (4/pi)(1-1e-3): c", r8.c_value,
           (4.0 / M_PI) * (1.0 - 1e-3));
    ck.is_true("L=8 amplitude > 1e-2", r8.amplitude > 1e-2);
    ck.leq("L=8 EL residual", r8.residual, 1e-8);
    ck.details << "c(8)=" << io::num(r8.c_value)
               << " amp=" << io::num(r8.amplitude) << "; ";
}

void c8_sweep_bracket(Check& ck, int threads)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg;
    cfg.N = 256;
    const auto recs =
        sweep_L(mp, k, {4.5, 5.0, 5.5, 6.0}, cfg, 1e-2, threads);

    const double L0 =
        find_L0(mp, k, BifurcationMethod::gamma).L0_gamma_formula;
    double lo = 0.0, hi = 0.0;
    for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
        if (recs[i].ok && recs[i + 1].ok &&
            recs[i].classification == Classification::constant &&
            recs[i + 1].classification == Classification::nonconstant) {
            lo = recs[i].L;
            hi = recs[i + 1].L;
        }
    }
    ck.is_true("flip found", lo > 0.0);
    if (lo > 0.0) {
        ck.leq("bracket width", hi - lo, 1.5e-2);
        ck.is_true("bracket contains L0", lo <= L0 && L0 <= hi);
        ck.details << "flip=[" << io::num(lo) << "," << io::num(hi)
                   << "] L0=" << io::num(L0) << "; ";
    }
}

void c9_bubble_residual(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double ts[] = {0.0, 1.0, -1.0, 2.0, -2.0};
    const double fine = bubble_residual(mp, k, ts, 1e-10);
    const double coarse = bubble_residual(mp, k, ts, 1e-6);
    ck.leq("residual(tol=1e-10)", fine, 1e-4);
    ck.is_true("refinement decreases", fine < coarse || fine < 1e-9);
    ck.details << "fine=" << fine << " coarse=" << coarse << "; ";
}

void c10_quadratic_form_oracle(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 5.0;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);

    double worst = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto p = random_smooth_profile(L, N, seed);
        const double qs = quadratic_form(sm, p);
        const double qd = quadratic_form_direct(mp, k, p);
        worst = std::max(worst, std::abs(qs - qd) / qs);
    }
    ck.leq("spectral vs direct double sum (20 profiles)", worst, 1e-4);

    // single-mode Plancherel identity
    PeriodicProfile mode{L, N, std::vector<double>(N)};
    const double eps = 0.3;
    for (int j = 0; j < N; ++j)
        mode.values[j] = 1.0 + eps * std::cos(2.0 * M_PI * j / N);
    const double expected = L * sm.theta[1] * eps * eps;
    ck.leq("Plancherel single mode", rel_gap(quadratic_form(sm, mode), expected),
           1e-12);
}

void c11_rescaled_competitor(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg;
    cfg.N = 256;
    const auto r6 = minimize_F(mp, k, 6.0, cfg);
    ck.is_true("minimizer at L1=6 nonconstant",
               r6.classification == Classification::nonconstant);

    const auto resc = rescale_profile(r6.profile, 9.0);
    const auto sm9 = compute_multipliers(mp, k, 9.0, cfg.N);
    const double F9 = functional_F(mp, sm9, resc).F_value;
    const double bound =
        std::pow(9.0 / 6.0, (mp.beta - 1.0) / (mp.beta + 1.0)) * r6.c_value;
    ck.is_true("F_9(rescaled) < (L2/L1)^{(b-1)/(b+1)} c(6)", F9 < bound);
    ck.is_true("hence c(9) < c*(9)", F9 < constant_energy(mp, 9.0));
    ck.details << "F9=" << io::num(F9) << " bound=" << io::num(bound) << "; ";
}

void c12_linearized_operator(Check& ck)
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 2.0 * M_PI;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);

    // assemble the linearization around the constant in physical space
    RealFourier fft(N);
    Eigen::MatrixXd M(N, N);
    std::vector<double> e(N, 0.0), col(N);
    std::vector<std::complex<double>> ehat(N / 2 + 1);
    const double shift = mp.c_ngamma * (1.0 - mp.beta);
    for (int j = 0; j < N; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        e[j] = 1.0;
        fft.forward(e.data(), ehat.data());
        for (int kk = 0; kk <= N / 2; ++kk)
            ehat[kk] *= sm.theta[kk] + shift;
        fft.inverse(ehat.data(), col.data());
        for (int i = 0; i < N; ++i)
            M(i, j) = col[i];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(
        0.5 * (M + M.transpose()));

    const double expected = sm.theta[1] + shift;
    double smallest_zero_mean = std::numeric_limits<double>::infinity();
    Eigen::VectorXd vec;
    for (int i = 0; i < N; ++i) {
        const double mean = es.eigenvectors().col(i).sum() / N;
        if (std::abs(mean) > 1e-8)
            continue;
        if (es.eigenvalues()(i) < smallest_zero_mean) {
            smallest_zero_mean = es.eigenvalues()(i);
            vec = es.eigenvectors().col(i);
        }
    }
    ck.leq("|lambda_min(0-mean) - (theta_1-(b-1)c)|",
           std::abs(smallest_zero_mean - expected), 1e-8);

    // the minimizing eigenvector lives in the k=1 pair
    std::vector<std::complex<double>> vhat(N / 2 + 1);
    std::vector<double> vv(vec.data(), vec.data() + N);
    fft.forward(vv.data(), vhat.data());
    int dominant = 0;
    double best = -1.0;
    for (int kk = 0; kk <= N / 2; ++kk)
        if (std::abs(vhat[kk]) > best) {
            best = std::abs(vhat[kk]);
            dominant = kk;
        }
    ck.is_true("attained at the k=1 mode", dominant == 1);
    ck.is_true("fundamental_mode(table) == 1", fundamental_mode(mp, sm) == 1);
}

} // namespace

PeriodicProfile random_smooth_profile(double L, int N, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    double a[6], ph[6];
    for (int m = 0; m < 6; ++m) {
        a[m] = 0.25 * unif(rng);
        ph[m] = 2.0 * M_PI * unif(rng);
    }
    PeriodicProfile p{L, N, std::vector<double>(N)};
    for (int j = 0; j < N; ++j) {
        double v = 1.0;
        const double x = 2.0 * M_PI * j / N;
        for (int m = 0; m < 6; ++m)
            v += a[m] / ((m + 1.0) * (m + 1.0)) * std::cos((m + 1.0) * x + ph[m]);
        p.values[j] = v;
    }
    return p;
}

std::vector<CriterionResult> run_acceptance(bool quick, int threads)
{
    std::vector<CriterionResult> out;
    out.push_back(run_one(1, "kernel closed form vs direct quadrature",
                          c1_kernel_closed_form));
    out.push_back(run_one(2, "kernel asymptotics (origin and tail)",
                          c2_asymptotics));
    out.push_back(run_one(3, "xiK monotonicity and lattice scaling",
                          c3_monotonicity_scaling));
    out.push_back(run_one(4, "normalization identity A = c_{n,gamma}",
                          c4_normalization_identity));
    out.push_back(run_one(5, "symbol cross-validation (quadrature vs Gamma)",
                          c5_symbol_cross_validation));
    if (!quick)
        out.push_back(run_one(6, "bifurcation period L0", c6_bifurcation_period));
    if (!quick) {
        out.push_back(run_one(7, "dichotomy at L=4 and L=8", c7_dichotomy));
        out.push_back(run_one(8, "sweep classification flip brackets L0",
                              [&](Check& c) { c8_sweep_bracket(c, threads); }));
        out.push_back(
            run_one(9, "ground-state bubble residual", c9_bubble_residual));
        out.push_back(run_one(10, "quadratic form vs double-sum oracle",
                              c10_quadratic_form_oracle));
        out.push_back(run_one(11, "rescaled competitor (period growth)",
                              c11_rescaled_competitor));
    }
    out.push_back(run_one(12, "linearized operator eigenvalue consistency",
                          c12_linearized_operator));
    return out;
}

std::string report_to_json(const std::vector<CriterionResult>& rs)
{
    nlohmann::json arr = nlohmann::json::array();
    bool all = true;
    for (const auto& r : rs) {
        nlohmann::json j;
        j["id"] = r.id;
        j["name"] = r.name;
        j["pass"] = r.pass;
        j["seconds"] = r.seconds;
        j["details"] = r.details;
        arr.push_back(j);
        all = all && r.pass;
    }
    nlohmann::json top;
    top["schema_version"] = 1;
    top["kind"] = "verify";
    top["all_pass"] = all;
    top["criteria"] = arr;
    return top.dump(2) + "\n";
}

} // namespace fyamabe::verify
