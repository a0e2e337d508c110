#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fyamabe/bifurcation.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/minimize.hpp"
#include "fyamabe/verify.hpp"

#include <cmath>

using namespace fyamabe;

namespace {
double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

SolveConfig fast_cfg()
{
    SolveConfig cfg;
    cfg.N = 128;
    return cfg;
}
} // namespace

TEST_CASE("constant energy")
{
    const auto mp = ModelParams::create(3, 0.5);
    CHECK(rel(constant_energy(mp, 8.0), 4.0 / M_PI) <= 1e-14);
    double prev = 0.0;
    for (double L : {0.1, 0.5, 2.0, 10.0}) {
        const double c = constant_energy(mp, L);
        CHECK(c > prev);
        prev = c;
    }
    CHECK_THROWS_AS(constant_energy(mp, -1.0), domain_error);
}

TEST_CASE("rescale_profile relabels the period only")
{
    PeriodicProfile p{4.0, 16, std::vector<double>(16, 2.0)};
    p.values[3] = 5.0;
    const auto q = rescale_profile(p, 9.0);
    CHECK(q.L == 9.0);
    CHECK(q.values == p.values);
    CHECK(rescale_profile(p, 4.0).values == p.values);
    CHECK_THROWS_AS(rescale_profile(p, 0.0), domain_error);
}

TEST_CASE("constant initialization converges immediately")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg = fast_cfg();
    cfg.inits = {InitKind::constant};
    const auto r = minimize_F(mp, k, 6.5, cfg);
    CHECK(r.iterations <= 2);
    CHECK(r.converged);
    const double v0 = std::pow(6.5, -1.0 / (mp.beta + 1.0));
    for (double v : r.profile.values)
        CHECK(rel(v, v0) <= 1e-12);
    CHECK(rel(r.c_value, constant_energy(mp, 6.5)) <= 1e-12);
}

TEST_CASE("below the critical period every initialization lands on the constant")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    for (InitKind init :
         {InitKind::constant, InitKind::cos_perturbed, InitKind::bubble}) {
        SolveConfig cfg = fast_cfg();
        cfg.inits = {init};
        const auto r = minimize_F(mp, k, 4.0, cfg);
        CHECK(r.classification == Classification::constant);
        CHECK(std::abs(r.c_value - r.cstar_value) <= 1e-6);
        CHECK(r.converged);
        CHECK(!r.ambiguous);
    }
}

TEST_CASE("small-period regime: L = 1 only admits the constant")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const auto r = minimize_F(mp, k, 1.0, fast_cfg());
    CHECK(r.classification == Classification::constant);
    CHECK(std::abs(r.c_value - r.cstar_value) <= 1e-9);
}

TEST_CASE("above the critical period the minimizer is nonconstant")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const auto r = minimize_F(mp, k, 8.0, fast_cfg());
    CHECK(r.classification == Classification::nonconstant);
    CHECK(r.c_value < r.cstar_value * (1.0 - 1e-3));
    CHECK(r.amplitude > 1e-2);
    CHECK(r.residual <= 1e-8);
    CHECK(r.converged);
    CHECK(r.monotone);
    // phase normalization puts the maximum at t = 0
    for (double v : r.profile.values)
        CHECK(v <= r.profile.values[0] + 1e-15);
    // positivity
    for (double v : r.profile.values)
        CHECK(v > 0.0);
}

TEST_CASE("large-period regime: the bubble competitor wins")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg;
    cfg.N = 256;
    cfg.inits = {InitKind::bubble};
    const auto r = minimize_F(mp, k, 20.0, cfg);
    CHECK(r.classification == Classification::nonconstant);
    CHECK(r.c_value < constant_energy(mp, 20.0) * (1.0 - 1e-3));
}

TEST_CASE("seed independence after phase normalization")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig a = fast_cfg(), b = fast_cfg();
    a.seed = 1;
    b.seed = 2;
    const auto ra = minimize_F(mp, k, 8.0, a);
    const auto rb = minimize_F(mp, k, 8.0, b);
    CHECK(std::abs(ra.c_value - rb.c_value) <= 1e-8);
    double sup = 0.0;
    for (int j = 0; j < ra.profile.N; ++j)
        sup = std::max(sup,
                       std::abs(ra.profile.values[j] - rb.profile.values[j]));
    CHECK(sup <= 1e-6);

    // identical config twice is bitwise-deterministic
    const auto ra2 = minimize_F(mp, k, 8.0, a);
    CHECK(ra.c_value == ra2.c_value);
    CHECK(ra.profile.values == ra2.profile.values);
}

TEST_CASE("weak-form consistency of a converged minimizer")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const auto r = minimize_F(mp, k, 8.0, fast_cfg());
    const auto sm = compute_multipliers(mp, k, 8.0, r.profile.N);

    // rescale so the profile solves the equation with the bare constant
    PeriodicProfile v = r.profile;
    const double lam = std::pow(r.c_value / mp.c_ngamma, 1.0 / (mp.beta - 1.0));
    for (double& x : v.values)
        x *= lam;

    const double h = v.L / v.N;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto phi = verify::random_smooth_profile(v.L, v.N, seed);
        double rhs = 0.0, norm1 = 0.0;
        for (int j = 0; j < v.N; ++j) {
            rhs += std::pow(v.values[j], mp.beta) * phi.values[j] * h;
            norm1 += std::abs(phi.values[j]) * h;
        }
        const double lhs = weak_pairing(mp, sm, v, phi);
        CHECK(std::abs(lhs - mp.c_ngamma * rhs) <=
              10.0 * std::max(r.residual, 1e-12) * norm1);
    }
}

TEST_CASE("invalid solver inputs")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg = fast_cfg();
    CHECK_THROWS_AS(minimize_F(mp, k, -2.0, cfg), domain_error);
    cfg.N = 100; // not a power of two
    CHECK_THROWS_AS(minimize_F(mp, k, 5.0, cfg), domain_error);
    cfg = fast_cfg();
    cfg.inits = {};
    CHECK_THROWS_AS(minimize_F(mp, k, 5.0, cfg), domain_error);
}

TEST_CASE("period sweep classifications and bracket")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg = fast_cfg();
    const auto recs = sweep_L(mp, k, {3.0, 4.0, 5.0, 5.5, 6.0, 8.0}, cfg,
                              1.0 /* no flip refinement */);
    REQUIRE(recs.size() == 6);
    const Classification expect[] = {
        Classification::constant,    Classification::constant,
        Classification::constant,    Classification::nonconstant,
        Classification::nonconstant, Classification::nonconstant};
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs[i].ok);
        CHECK(recs[i].classification == expect[i]);
        CHECK(recs[i].c <= recs[i].cstar + 1e-12);
        const double gap = recs[i].cstar - recs[i].c;
        if (recs[i].classification == Classification::constant)
            CHECK(gap <= 1e-9 * recs[i].cstar);
        else
            CHECK(gap > 1e-9 * recs[i].cstar);
    }

    // multithreaded sweep returns identical records
    const auto recs4 = sweep_L(mp, k, {3.0, 4.0, 5.0, 5.5, 6.0, 8.0}, cfg,
                               1.0, 4);
    REQUIRE(recs4.size() == recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) {
        CHECK(recs4[i].c == recs[i].c);
        CHECK(recs4[i].classification == recs[i].classification);
    }
}

TEST_CASE("dichotomy verification around the critical period")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    SolveConfig cfg = fast_cfg();
    const auto rep = verify_dichotomy(mp, k, cfg, 4.0, 8.0);
    CHECK(rep.pass);
    CHECK(rep.pass_below);
    CHECK(rep.pass_above);
    CHECK(rep.pass_at_L0);
    CHECK(rep.L0 == doctest::Approx(5.1538).epsilon(2e-4));

    CHECK_THROWS_AS(verify_dichotomy(mp, k, cfg, 8.0, 8.0), domain_error);
    CHECK_THROWS_AS(verify_dichotomy(mp, k, cfg, 2.0, 3.0), domain_error);
}

TEST_CASE("just above the critical period: small-amplitude branch")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L0 =
        find_L0(mp, k, BifurcationMethod::gamma).L0_gamma_formula;
    const auto r = minimize_F(mp, k, L0 + 0.05, fast_cfg());
    CHECK(r.classification == Classification::nonconstant);
    const double gap = r.cstar_value - r.c_value;
    CHECK(gap > 0.0);
    CHECK(gap < 1e-3 * r.cstar_value); // pitchfork: tiny just past onset
    CHECK(r.amplitude < 0.5);
}

TEST_CASE("every step rule reaches the same minimum")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    double c_ref = 0.0;
    for (StepRule rule :
         {StepRule::spectral_bb, StepRule::backtracking, StepRule::fixed}) {
        SolveConfig cfg;
        cfg.N = 64;
        cfg.step_rule = rule;
        cfg.grad_tol = 1e-8;
        cfg.max_iter = 200000;
        const auto r = minimize_F(mp, k, 8.0, cfg);
        CHECK(r.converged);
        CHECK(r.classification == Classification::nonconstant);
        if (rule == StepRule::spectral_bb)
            c_ref = r.c_value;
        else
            CHECK(std::abs(r.c_value - c_ref) <= 1e-7);
    }
}

TEST_CASE("grid refinement: c(8) settles spectrally in N")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    double prev = 0.0;
    double diffs[3] = {0, 0, 0};
    int i = 0;
    for (int N : {64, 128, 256, 512}) {
        SolveConfig cfg;
        cfg.N = N;
        const auto r = minimize_F(mp, k, 8.0, cfg);
        if (N > 64)
            diffs[i++] = std::abs(r.c_value - prev);
        prev = r.c_value;
    }
    CHECK(diffs[1] < diffs[0]);      // refinement helps
    CHECK(diffs[2] <= 1e-10);        // and has saturated by N=512
}

TEST_CASE("dichotomy holds at generic parameters")
{
    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}}) {
        const auto mp = ModelParams::create(n, g);
        const Kernel k(mp);
        const double L0 =
            find_L0(mp, k, BifurcationMethod::gamma).L0_gamma_formula;
        SolveConfig cfg;
        cfg.N = 128;
        const auto below = minimize_F(mp, k, 0.7 * L0, cfg);
        CHECK(below.classification == Classification::constant);
        CHECK(std::abs(below.c_value - below.cstar_value) <=
              1e-9 * below.cstar_value);
        const auto above = minimize_F(mp, k, 1.6 * L0, cfg);
        CHECK(above.classification == Classification::nonconstant);
        CHECK(above.c_value < above.cstar_value * (1.0 - 1e-3));
        CHECK(above.residual <= 1e-8);
    }
}

TEST_CASE("solver residual agrees with the standalone EL residual")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const auto r = minimize_F(mp, k, 8.0, fast_cfg());
    const auto sm = compute_multipliers(mp, k, 8.0, r.profile.N);

    PeriodicProfile v = r.profile;
    const double lam = std::pow(r.c_value / mp.c_ngamma, 1.0 / (mp.beta - 1.0));
    for (double& x : v.values)
        x *= lam;
    const double sup = el_residual(mp, sm, v).second;
    CHECK(sup <= 2.0 * r.residual + 1e-14);
}
