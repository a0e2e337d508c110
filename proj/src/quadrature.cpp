#include "fyamabe/quadrature.hpp"
#include "fyamabe/errors.hpp"

#include <cmath>
#include <map>
#include <mutex>

namespace fyamabe::quad {

namespace {

struct Rule {
    std::vector<double> x, w;
};

// Legendre nodes by Newton from the Chebyshev initial guess; weights
// w_i = 2 / ((1 - x_i^2) P_n'(x_i)^2).
Rule make_rule(int n)
{
    Rule r;
    r.x.resize(n);
    r.w.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        r.x[i] = x;
        r.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return r;
}

const Rule& rule(int n)
{
    static std::map<int, Rule> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, make_rule(n)).first;
    return it->second;
}

} // namespace

const std::vector<double>& gl_nodes(int n) { return rule(n).x; }
const std::vector<double>& gl_weights(int n) { return rule(n).w; }

double gl_panel(const Fn& f, double a, double b, int n)
{
    const Rule& r = rule(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        sum += r.w[i] * f(mid + half * r.x[i]);
    return sum * half;
}

double gl_split(const Fn& f, double a, double b, int parts, int n)
{
    double sum = 0.0;
    const double h = (b - a) / parts;
    for (int i = 0; i < parts; ++i)
        sum += gl_panel(f, a + i * h, a + (i + 1) * h, n);
    return sum;
}

namespace {

struct AdaptiveState {
    const Fn* f;
    double abs_tol, rel_tol;
    int order;
    double value = 0.0;
    double err = 0.0;
};

void adaptive_rec(AdaptiveState& st, double a, double b, double whole,
                  int depth)
{
    const double mid = 0.5 * (a + b);
    const double left = gl_panel(*st.f, a, mid, st.order);
    const double right = gl_panel(*st.f, mid, b, st.order);
    const double est = std::abs(whole - left - right);
    // local acceptance against the error budget for this span
    const double budget =
        std::max(st.abs_tol, st.rel_tol * std::abs(st.value + whole));
    if (depth <= 0 || est <= budget * 1e-2 ||
        b - a < 1e-15 * (std::abs(a) + std::abs(b))) {
        st.value += left + right;
        st.err += est;
        return;
    }
    adaptive_rec(st, a, mid, left, depth - 1);
    adaptive_rec(st, mid, b, right, depth - 1);
}

} // namespace

double adaptive(const Fn& f, double a, double b, double abs_tol,
                double rel_tol, int max_depth, int n)
{
    AdaptiveState st;
    st.f = &f;
    st.abs_tol = abs_tol;
    st.rel_tol = rel_tol;
    st.order = n;
    adaptive_rec(st, a, b, gl_panel(f, a, b, n), max_depth);
    if (st.err > std::max(abs_tol, rel_tol * std::abs(st.value)))
        throw no_convergence("adaptive quadrature missed its tolerance",
                             st.err);
    return st.value;
}

std::vector<double> dyadic_down(double a, double b)
{
    std::vector<double> bp{b};
    double x = b;
    while (x * 0.5 > a) {
        x *= 0.5;
        bp.push_back(x);
    }
    bp.push_back(a);
    return bp; // descending
}

double over_breakpoints(const Fn& f, const std::vector<double>& bp,
                        double omega, int n)
{
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < bp.size(); ++i) {
        double lo = bp[i], hi = bp[i + 1];
        if (lo > hi)
            std::swap(lo, hi);
        if (lo == hi)
            continue;
        int parts = 1;
        if (omega > 0.0)
            parts = std::max(1, static_cast<int>(
                                    std::ceil(omega * (hi - lo) / 5.0)));
        sum += gl_split(f, lo, hi, parts, n);
    }
    return sum;
}

} // namespace fyamabe::quad
