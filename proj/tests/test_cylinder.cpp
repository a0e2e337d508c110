#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fyamabe/bifurcation.hpp"
#include "fyamabe/cylinder.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/verify.hpp"
#include "oracles.hpp"

#include <cmath>

using namespace fyamabe;

namespace {
double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}

PeriodicProfile single_mode(double L, int N, double eps, int mode = 1)
{
    PeriodicProfile p{L, N, std::vector<double>(N)};
    for (int j = 0; j < N; ++j)
        p.values[j] = 1.0 + eps * std::cos(2.0 * M_PI * mode * j / N);
    return p;
}
} // namespace

TEST_CASE("multipliers: exact symbol at n=3, gamma=1/2")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    CHECK(symbol_theta(mp, k, 0.0) == 0.0);
    for (double mu : {0.5, 1.0, 2.0, 5.0, 20.0}) {
        const double exact = mu / std::tanh(0.5 * M_PI * mu) - 2.0 / M_PI;
        CHECK(rel(symbol_theta(mp, k, mu), exact) <= 1e-10);
    }
}

TEST_CASE("multipliers agree with the Gamma-formula symbol at generic parameters")
{
    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}}) {
        const auto mp = ModelParams::create(n, g);
        const Kernel k(mp);
        for (double mu : {0.7, 2.2}) {
            const double via_theta = symbol_theta(mp, k, mu) + mp.c_ngamma;
            const double via_gamma = delta_gamma_formula(mp, mu * mu) +
                                     mp.beta * mp.c_ngamma;
            CHECK(rel(via_theta, via_gamma) <= 1e-9);
        }
    }
}

TEST_CASE("multiplier table: zero mode, positivity, monotonicity")
{
    const auto mp = ModelParams::create(4, 0.3);
    const Kernel k(mp);
    const auto sm = compute_multipliers(mp, k, 6.0, 32);
    CHECK(sm.theta[0] == 0.0);
    for (int kk = 1; kk <= 16; ++kk) {
        CHECK(sm.theta[kk] > 0.0);
        CHECK(sm.theta[kk] > sm.theta[kk - 1]);
    }
}

TEST_CASE("quadratic form: constant, single mode, shapes")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 5.0;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);

    PeriodicProfile c{L, N, std::vector<double>(N, 3.7)};
    CHECK(std::abs(quadratic_form(sm, c)) <= 1e-12);

    const double eps = 0.25;
    CHECK(rel(quadratic_form(sm, single_mode(L, N, eps)),
              L * sm.theta[1] * eps * eps) <= 1e-12);

    PeriodicProfile wrong{L, N / 2, std::vector<double>(N / 2, 1.0)};
    CHECK_THROWS_AS(quadratic_form(sm, wrong), domain_error);
}

TEST_CASE("quadratic form vs the double-sum oracle")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 5.0;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);
    for (std::uint64_t seed : {1, 2, 3, 4, 5}) {
        const auto p = verify::random_smooth_profile(L, N, seed);
        const double qs = quadratic_form(sm, p);
        const double qd = quadratic_form_direct(mp, k, p);
        CHECK(std::abs(qs - qd) / qs <= 1e-4);
    }
}

TEST_CASE("energy quotient")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 8.0;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);

    PeriodicProfile one{L, N, std::vector<double>(N, 1.0)};
    const auto e1 = functional_F(mp, sm, one);
    CHECK(std::abs(e1.quadratic) <= 1e-12);
    CHECK(rel(e1.mass, mp.c_ngamma * L) <= 1e-14);
    CHECK(rel(e1.F_value, 4.0 / M_PI) <= 1e-13); // c*(8) = (2/pi) 8^{1/3}

    // scale invariance and the breakdown identity
    auto p = verify::random_smooth_profile(L, N, 42);
    const auto e = functional_F(mp, sm, p);
    CHECK(rel(e.F_value, (e.quadratic + e.mass) /
                             std::pow(e.nonlinear, 2.0 / (mp.beta + 1.0))) <=
          1e-14);
    CHECK(rel(2.0 * e.quadratic, quadratic_form(sm, p)) <= 1e-14);
    auto p2 = p;
    for (double& v : p2.values)
        v *= 2.0;
    CHECK(rel(functional_F(mp, sm, p2).F_value, e.F_value) <= 1e-12);

    // dealiased nonlinear integral stays close for smooth profiles
    const auto ep = functional_F(mp, sm, p, true);
    CHECK(rel(ep.nonlinear, e.nonlinear) <= 1e-6);

    PeriodicProfile zero{L, N, std::vector<double>(N, 0.0)};
    CHECK_THROWS_AS(functional_F(mp, sm, zero), domain_error);
}

TEST_CASE("Euler-Lagrange residual")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const int N = 64;

    // the constant is an exact solution
    {
        const double L = 6.0;
        const auto sm = compute_multipliers(mp, k, L, N);
        PeriodicProfile one{L, N, std::vector<double>(N, 1.0)};
        CHECK(el_residual(mp, sm, one).second <= 1e-13);

        PeriodicProfile neg{L, N, std::vector<double>(N, 1.0)};
        neg.values[3] = -0.1;
        CHECK_THROWS_AS(el_residual(mp, sm, neg), domain_error);
    }

    // at the critical period the linear term dies: residual = O(eps^2)
    {
        const double L0 = find_L0(mp, k, BifurcationMethod::gamma)
                              .L0_gamma_formula;
        const auto sm = compute_multipliers(mp, k, L0, N);
        const double r3 = el_residual(mp, sm, single_mode(L0, N, 1e-3)).second;
        const double r4 = el_residual(mp, sm, single_mode(L0, N, 1e-4)).second;
        CHECK(r3 / 1e-6 <= 3.0 * (r4 / 1e-8));
        CHECK(r4 / 1e-8 <= 3.0 * (r3 / 1e-6));
        CHECK(r3 <= 1e-5);
    }
}

TEST_CASE("normalization identity A = c_{n,gamma}")
{
    {
        const auto mp = ModelParams::create(3, 0.5);
        CHECK(std::abs(normalization_constant_A(mp, Kernel(mp)) - 2.0 / M_PI) <=
              1e-11);
    }
    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}}) {
        const auto mp = ModelParams::create(n, g);
        CHECK(rel(normalization_constant_A(mp, Kernel(mp)), mp.c_ngamma) <=
              1e-6);
    }
}

TEST_CASE("ground-state bubble")
{
    const auto mp = ModelParams::create(3, 0.5);
    CHECK(bubble(mp, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
    for (double t : {0.3, 2.0, 17.0})
        CHECK(bubble(mp, -t) == bubble(mp, t));
    CHECK(std::log(bubble(mp, 50.0)) / 50.0 ==
          doctest::Approx(-mp.sigma).epsilon(1e-3));
    CHECK(std::isfinite(bubble(mp, 1000.0)));
    CHECK(std::isfinite(bubble(mp, -1000.0)));

    // amplitude solving the line equation: (S/c)^{1/(beta-1)} = pi here
    CHECK(rel(bubble_solution_amplitude(mp), M_PI) <= 1e-13);
}

TEST_CASE("bubble residual is quadrature-limited")
{
    const double ts[] = {0.0, 1.0, -1.0, 2.0, -2.0};
    for (auto [n, g] : {std::pair<int, double>{3, 0.5}, {4, 0.3}}) {
        const auto mp = ModelParams::create(n, g);
        const Kernel k(mp);
        const double fine = bubble_residual(mp, k, ts, 1e-10);
        const double coarse = bubble_residual(mp, k, ts, 1e-6);
        CHECK(fine <= 1e-6);
        CHECK((fine < coarse || fine < 1e-9));
    }
}

TEST_CASE("weak pairing: symmetry and the numerator identity")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 7.0;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);
    const auto v = verify::random_smooth_profile(L, N, 5);
    const auto w = verify::random_smooth_profile(L, N, 6);
    CHECK(rel(weak_pairing(mp, sm, v, w), weak_pairing(mp, sm, w, v)) <= 1e-12);
    const auto e = functional_F(mp, sm, v);
    CHECK(rel(weak_pairing(mp, sm, v, v), e.quadratic + e.mass) <= 1e-12);
}

TEST_CASE("quotient of a sign-changing profile dominates that of its modulus")
{
    const auto mp = ModelParams::create(3, 0.5);
    const Kernel k(mp);
    const double L = 6.0;
    const int N = 64;
    const auto sm = compute_multipliers(mp, k, L, N);

    auto p = verify::random_smooth_profile(L, N, 21);
    for (int j = 0; j < N; ++j)
        p.values[j] -= 1.1; // force sign changes
    auto q = p;
    for (double& v : q.values)
        v = std::abs(v);

    const double Fp = functional_F(mp, sm, p).F_value;
    const double Fq = functional_F(mp, sm, q).F_value;
    CHECK(std::isfinite(Fp));
    CHECK(Fq <= Fp + 1e-12 * Fp);
}
