#ifndef FYAMABE_ERRORS_HPP
#define FYAMABE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace fyamabe {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid argument or parameter outside the supported domain
/// (poles of Gamma, points on the singular lattice, bad model parameters).
class domain_error : public error {
public:
    explicit domain_error(const std::string& msg) : error(msg) {}
};

/// The z -> 1-z hypergeometric transformation hit (or came too close to)
/// its logarithmic case; callers fall back to direct kernel quadrature.
class degenerate_parameters : public error {
public:
    explicit degenerate_parameters(const std::string& msg) : error(msg) {}
};

/// A series, quadrature rule or iterative solver failed to reach the
/// requested tolerance within its iteration budget.
class no_convergence : public error {
public:
    no_convergence(const std::string& msg, double achieved = -1.0)
        : error(msg), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};

} // namespace fyamabe

#endif
