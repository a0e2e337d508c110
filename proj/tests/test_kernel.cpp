#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fyamabe/errors.hpp"
#include "fyamabe/kernel.hpp"
#include "oracles.hpp"

#include <cmath>
#include <random>

using namespace fyamabe;

namespace {
double rel(double a, double b)
{
    return std::abs(a - b) / std::max(std::abs(a), std::abs(b));
}
} // namespace

TEST_CASE("exact reduction at n=3, gamma=1/2: K = pi/sinh^2")
{
    const Kernel k(ModelParams::create(3, 0.5));
    CHECK(rel(k.closed(1.0), M_PI / std::pow(std::sinh(1.0), 2)) <= 1e-14);
    CHECK(rel(k.direct(3.0), M_PI / std::pow(std::sinh(3.0), 2)) <= 1e-11);
    CHECK(k.closed(-1.0) == k.closed(1.0));
    CHECK(!k.closed_form_degenerate());
    CHECK(rel(k.singular_strength(), M_PI) <= 1e-13);
}

TEST_CASE("n=3 family against the elementary integral")
{
    for (double g : {0.2, 0.35, 0.49}) {
        const Kernel k(ModelParams::create(3, g));
        for (double xi : {0.05, 0.3, 1.0, 4.0}) {
            CHECK(rel(k.value(xi), oracles::n3_kernel_exact(g, xi)) <= 1e-9);
            CHECK(rel(k.direct(xi), oracles::n3_kernel_exact(g, xi)) <= 1e-9);
        }
    }
}

TEST_CASE("closed form vs direct quadrature on [1e-2, 20]")
{
    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}}) {
        const Kernel k(ModelParams::create(n, g));
        for (int i = 0; i <= 12; ++i) {
            const double xi = 1e-2 * std::pow(2000.0, i / 12.0);
            CHECK(rel(k.closed(xi), k.direct(xi)) <= 1e-8);
        }
    }
}

TEST_CASE("evenness and positivity")
{
    const Kernel k(ModelParams::create(4, 0.3));
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unif(1e-3, 10.0);
    for (int i = 0; i < 50; ++i) {
        const double xi = unif(rng);
        CHECK(k.closed(xi) > 0.0);
        CHECK(rel(k.closed(xi), k.closed(-xi)) <= 1e-12);
    }
}

TEST_CASE("near-zero and tail laws")
{
    for (auto [n, g] : {std::pair<int, double>{3, 0.5}, {4, 0.3}, {5, 0.7}}) {
        const Kernel k(ModelParams::create(n, g));
        const double near = k.value(1e-3) * std::pow(1e-3, 1.0 + 2.0 * g);
        CHECK(std::abs(near - k.singular_strength()) /
                  k.singular_strength() <=
              1e-3);
        const double slope =
            (k.log_value(30.5) - k.log_value(29.5)) / 1.0;
        CHECK(std::abs(slope + 0.5 * (n + 2.0 * g)) <= 1e-3);
    }
}

TEST_CASE("singular strength: Gauss value vs Richardson extrapolation")
{
    for (auto [n, g] : {std::pair<int, double>{4, 0.3}, {5, 0.7}, {3, 0.4}}) {
        const Kernel k(ModelParams::create(n, g));
        CHECK(k.singular_strength() > 0.0);
        CHECK(rel(k.singular_strength(), k.singular_strength_extrapolated()) <=
              1e-6);
    }
}

TEST_CASE("periodized kernel")
{
    const Kernel k(ModelParams::create(3, 0.5));
    const double L = 5.0, tol = 1e-12;

    // lattice-sum oracle in the exact reduction
    double oracle = 0.0;
    for (int j = -40; j <= 40; ++j)
        oracle += M_PI / std::pow(std::sinh(1.0 - 5.0 * j), 2);
    CHECK(rel(k.periodized(L, 1.0, tol), oracle) <= 1e-12);

    for (double xi : {0.3, 1.7, 4.2}) {
        CHECK(rel(k.periodized(L, xi + L, tol), k.periodized(L, xi, tol)) <=
              1e-12);
        CHECK(k.periodized(L, xi, tol) >= k.value(xi));
        CHECK(k.periodized(L, xi, tol) > 0.0);
    }

    CHECK_THROWS_AS(k.periodized(L, 0.0, tol), domain_error);
    CHECK_THROWS_AS(k.periodized(L, 2.0 * L, tol), domain_error);
    CHECK_THROWS_AS(k.periodized(-1.0, 0.5, tol), domain_error);
}

TEST_CASE("degenerate-parameter window delegates to quadrature")
{
    const Kernel k(ModelParams::create(4, 0.5)); // c-a-b = 1, a~ != 0
    CHECK(k.closed_form_degenerate());
    CHECK_THROWS_AS(k.closed(0.5), degenerate_parameters);
    CHECK_NOTHROW(k.closed(1.2)); // sech^2 < 1/2, direct series regime
    CHECK(rel(k.value(0.5), k.direct(0.5, 1e-12)) <= 1e-11);
    CHECK(rel(k.value(1.2), k.closed(1.2)) <= 1e-14);
}

TEST_CASE("kernel domain errors")
{
    const Kernel k(ModelParams::create(3, 0.5));
    CHECK_THROWS_AS(k.closed(0.0), domain_error);
    CHECK_THROWS_AS(k.direct(0.0), domain_error);
}

TEST_CASE("scaling inequality and xi*K monotonicity")
{
    const Kernel k(ModelParams::create(3, 0.5));
    const auto rep = check_scaling_inequality(k, 6.0, 3.0, 50);
    CHECK(rep.pass);
    CHECK(rep.scaling_pass);
    CHECK(rep.monotone_pass);
    CHECK(rep.worst_scaling_margin > 0.0);
    CHECK(!rep.degenerate_input);

    // spot values: 0.5 K(0.5) > 1.0 K(1.0)
    CHECK(0.5 * k.value(0.5) > 1.0 * k.value(1.0));

    const auto eq = check_scaling_inequality(k, 3.0, 3.0, 10);
    CHECK(eq.degenerate_input);
    CHECK(std::abs(eq.worst_scaling_margin) <= 1e-12);

    CHECK_THROWS_AS(check_scaling_inequality(k, 2.0, 3.0, 10), domain_error);
    CHECK_THROWS_AS(check_scaling_inequality(k, 6.0, 3.0, 1), domain_error);
}

TEST_CASE("model parameter validation")
{
    CHECK_THROWS_AS(ModelParams::create(2, 0.9), domain_error);
    CHECK_THROWS_AS(ModelParams::create(3, 0.0), domain_error);
    CHECK_THROWS_AS(ModelParams::create(3, 1.0), domain_error);
    CHECK_NOTHROW(ModelParams::create(3, 0.5)); // equality n = 2+2g allowed
    CHECK_NOTHROW(ModelParams::create_relaxed(3, 0.9));
    CHECK_THROWS_AS(ModelParams::create(3, 0.9), domain_error);

    const auto mp = ModelParams::create(3, 0.5);
    CHECK(rel(mp.c_ngamma, 2.0 / M_PI) <= 1e-14);
    CHECK(rel(mp.kappa_ngamma, 1.0 / (M_PI * M_PI)) <= 1e-14);
    CHECK(mp.beta == doctest::Approx(2.0));
    CHECK(mp.sigma == doctest::Approx(1.0));

    const auto kp = KernelParams::create(mp);
    CHECK(kp.a - kp.b + 1.0 == doctest::Approx(kp.c).epsilon(1e-15));
    CHECK(rel(kp.c_n, M_PI) <= 1e-14);
    CHECK(rel(kp.cbar_n, 2.0 * M_PI) <= 1e-14);
    CHECK(kp.tail_rate == doctest::Approx(2.0));
    CHECK(kp.sing_exponent == doctest::Approx(2.0));
    CHECK(kp.f.c_tilde - kp.f.a_tilde - kp.f.b_tilde ==
          doctest::Approx(mp.gamma + 0.5));
}

TEST_CASE("periodization truncation honors its tolerance")
{
    const Kernel k(ModelParams::create(4, 0.3));
    for (double xi : {0.4, 1.9})
        CHECK(std::abs(k.periodized(4.0, xi, 1e-6) -
                       k.periodized(4.0, xi, 1e-13)) <= 1e-6);
}
