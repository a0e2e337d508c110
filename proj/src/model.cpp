#include "fyamabe/model.hpp"
#include "fyamabe/errors.hpp"

#include <cmath>
#include <cstdio>

namespace fyamabe {

namespace {

ModelParams fill(int n, double gamma)
{
    ModelParams mp;
    mp.n = n;
    mp.gamma = gamma;
    mp.beta = (n + 2.0 * gamma) / (n - 2.0 * gamma);
    mp.sigma = 0.5 * (n - 2.0 * gamma);
    const double rg = specfun::gamma_real(0.5 * (0.5 * n + gamma)) /
                      specfun::gamma_real(0.5 * (0.5 * n - gamma));
    mp.c_ngamma = std::pow(2.0, 2.0 * gamma) * rg * rg;
    mp.kappa_ngamma = std::pow(M_PI, -0.5 * n) * std::pow(2.0, 2.0 * gamma) *
                      specfun::gamma_real(0.5 * n + gamma) /
                      specfun::gamma_real(1.0 - gamma) * gamma;
    return mp;
}

} // namespace

ModelParams ModelParams::create(int n, double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw domain_error("ModelParams: gamma must lie in (0,1)");
    if (n < 2 + 2.0 * gamma) {
        char buf[96];
        std::snprintf(buf, sizeof buf,
                      "ModelParams: need n >= 2 + 2*gamma = %g, got n = %d",
                      2 + 2.0 * gamma, n);
        throw domain_error(buf);
    }
    return fill(n, gamma);
}

ModelParams ModelParams::create_relaxed(int n, double gamma)
{
    if (!(gamma > 0.0 && gamma < 1.0))
        throw domain_error("ModelParams: gamma must lie in (0,1)");
    if (n < 2)
        throw domain_error("ModelParams: need n >= 2");
    return fill(n, gamma);
}

KernelParams KernelParams::create(const ModelParams& mp)
{
    KernelParams kp;
    const double n = mp.n, g = mp.gamma;
    kp.a = 0.5 * (n + 2.0 * g);
    kp.b = 1.0 + g;
    kp.c = 0.5 * n;
    kp.cbar_n = 2.0 * std::pow(M_PI, 0.5 * (n - 1.0)) /
                specfun::gamma_real(0.5 * (n - 1.0));
    kp.c_n = kp.cbar_n * std::pow(2.0, -0.5 * (n + 2.0 * g)) * std::sqrt(M_PI) *
             specfun::gamma_real(0.5 * (n - 1.0)) /
             specfun::gamma_real(0.5 * n);
    kp.tail_rate = 0.5 * (n + 2.0 * g);
    kp.sing_exponent = 1.0 + 2.0 * g;
    kp.f.a_tilde = 0.5 * (kp.a + 1.0) - kp.b;
    kp.f.b_tilde = 0.5 * kp.a - kp.b + 1.0;
    kp.f.c_tilde = kp.a - kp.b + 1.0; // equals c
    return kp;
}

} // namespace fyamabe
