// Command-line front-end: kernel tabulation, minimization, period sweeps,
// bifurcation location and the verification battery.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage/parameter error,
// 3 numerical failure, 4 partial results.

#include "fyamabe/bifurcation.hpp"
#include "fyamabe/errors.hpp"
#include "fyamabe/io.hpp"
#include "fyamabe/verify.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdlib>
#include <iostream>
#include <optional>

namespace {

using namespace fyamabe;

constexpr int exit_ok = 0;
constexpr int exit_verify_failure = 1;
constexpr int exit_usage = 2;
constexpr int exit_numerical = 3;
constexpr int exit_partial = 4;

int env_threads()
{
    if (const char* s = std::getenv("FYAMABE_THREADS")) {
        const int t = std::atoi(s);
        if (t >= 1)
            return t;
    }
    return 1;
}

struct CommonOpts {
    int n = 3;
    double gamma = 0.5;
    std::string out;
    std::string format = "csv";
    double tol = 1e-10;
    std::uint64_t seed = 0;
};

io::Format parse_format(const std::string& f)
{
    if (f == "csv")
        return io::Format::csv;
    if (f == "json")
        return io::Format::json;
    throw CLI::ValidationError("--format must be csv or json");
}

// grid spec "a:b:step" -> inclusive sample list
std::vector<double> parse_grid(const std::string& spec)
{
    double a = 0, b = 0, step = 0;
    if (std::sscanf(spec.c_str(), "%lf:%lf:%lf", &a, &b, &step) != 3 ||
        step <= 0.0 || b < a)
        throw CLI::ValidationError("grid spec must be a:b:step with step > 0");
    std::vector<double> g;
    for (double x = a; x <= b + 1e-12 * step; x += step)
        g.push_back(x);
    return g;
}

void add_common(CLI::App* cmd, CommonOpts& o)
{
    cmd->set_config("--config", "", "config file (key = value lines)")
        ->check(CLI::ExistingFile);
    cmd->add_option("--n", o.n, "ambient dimension");
    cmd->add_option("--gamma", o.gamma, "fractional order in (0,1)");
    cmd->add_option("--out", o.out, "output path");
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--tol", o.tol, "numerical tolerance");
    cmd->add_option("--seed", o.seed, "random seed");
}

ModelParams make_params(const CommonOpts& o)
{
    return ModelParams::create(o.n, o.gamma); // throws on n < 2 + 2 gamma
}

void emit(const std::string& path, const std::string& text)
{
    if (path.empty())
        std::cout << text;
    else
        io::write_file_atomic(path, text);
}

int cmd_kernel(const CommonOpts& o, const std::vector<double>& xis,
               const std::string& grid, std::optional<double> L)
{
    const auto mp = make_params(o);
    const Kernel k(mp);

    std::vector<double> pts = xis;
    if (!grid.empty())
        for (double x : parse_grid(grid))
            pts.push_back(x);
    if (pts.empty())
        throw CLI::ValidationError("kernel: give --xi and/or --xi-grid");

    std::vector<io::KernelRow> rows;
    for (double xi : pts) {
        if (xi == 0.0) {
            std::cerr << "warning: skipping singular point xi = 0\n";
            continue;
        }
        io::KernelRow r;
        r.xi = xi;
        r.direct = k.direct(xi, std::min(o.tol, 1e-11));
        try {
            r.closed = k.closed(xi);
        } catch (const degenerate_parameters&) {
            r.closed = r.direct; // closed form unusable here; quadrature path
        }
        r.rel_gap = std::abs(r.closed - r.direct) /
                    std::max(std::abs(r.closed), std::abs(r.direct));
        r.periodized = L ? k.periodized(*L, xi, std::min(o.tol, 1e-11))
                         : std::numeric_limits<double>::quiet_NaN();
        rows.push_back(r);
    }
    const bool with_KL = L.has_value();
    emit(o.out, parse_format(o.format) == io::Format::csv
                    ? io::kernel_table_to_csv(rows, with_KL, true)
                    : io::kernel_table_to_json(rows, with_KL));
    return exit_ok;
}

int cmd_solve(const CommonOpts& o, double L, int N, int max_iter,
              const std::string& summary_path)
{
    const auto mp = make_params(o);
    const Kernel k(mp);
    SolveConfig cfg;
    cfg.N = N;
    cfg.max_iter = max_iter;
    cfg.grad_tol = o.tol;
    cfg.seed = o.seed;
    const auto r = minimize_F(mp, k, L, cfg);

    const std::string base = o.out.empty() ? "solution" : o.out;
    io::write_profile(base, r.profile, parse_format(o.format));
    const std::string spath =
        summary_path.empty() ? base + ".summary.json" : summary_path;
    io::write_file_atomic(spath, io::solve_summary_json(mp, r));
    std::cout << "c(L)=" << io::num(r.c_value)
              << " c*(L)=" << io::num(r.cstar_value) << " "
              << (r.classification == Classification::constant
                      ? "constant"
                      : "nonconstant")
              << " residual=" << io::num(r.residual) << "\n";
    if (!r.converged) {
        std::cerr << "solver did not converge; best iterate written\n";
        return exit_numerical;
    }
    return exit_ok;
}

int cmd_sweep(const CommonOpts& o, const std::string& grid, int N,
              double refine)
{
    const auto mp = make_params(o);
    const Kernel k(mp);
    SolveConfig cfg;
    cfg.N = N;
    cfg.grad_tol = o.tol;
    cfg.seed = o.seed;
    const auto recs =
        sweep_L(mp, k, parse_grid(grid), cfg, refine, env_threads());

    emit(o.out, parse_format(o.format) == io::Format::csv
                    ? io::sweep_to_csv(recs, true)
                    : io::sweep_to_json(recs));
    for (const auto& r : recs)
        if (!r.ok)
            return exit_partial;
    return exit_ok;
}

int cmd_bifurcate(const CommonOpts& o, const std::string& method)
{
    const auto mp = make_params(o);
    const Kernel k(mp);
    BifurcationMethod m = BifurcationMethod::both;
    if (method == "gamma")
        m = BifurcationMethod::gamma;
    else if (method == "symbol")
        m = BifurcationMethod::symbol;
    const auto res = find_L0(mp, k, m);
    emit(o.out, io::bifurcation_to_json(mp, res));
    return exit_ok;
}

int cmd_verify(const CommonOpts&, bool quick, const std::string& out)
{
    const auto results = verify::run_acceptance(quick, env_threads());
    bool all = true;
    for (const auto& r : results) {
        std::cout << (r.pass ? "[PASS] " : "[FAIL] ") << "criterion " << r.id
                  << ": " << r.name << " (" << r.seconds << " s)\n";
        if (!r.pass)
            std::cout << "       " << r.details << "\n";
        all = all && r.pass;
    }
    if (!out.empty())
        io::write_file_atomic(out, verify::report_to_json(results));
    return all ? exit_ok : exit_verify_failure;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Periodic solutions and the bifurcation period of the "
                 "fractional constant-curvature equation on the cylinder"};
    app.require_subcommand(1);

    CommonOpts o;

    auto* kern = app.add_subcommand("kernel", "tabulate the cylinder kernel");
    add_common(kern, o);
    std::vector<double> xis;
    std::string xi_grid;
    double kernel_L = 0.0;
    bool has_L = false;
    kern->add_option("--xi", xis, "evaluation points");
    kern->add_option("--xi-grid", xi_grid, "grid spec a:b:step");
    kern->add_option("--L", kernel_L, "also tabulate the periodized kernel")
        ->each([&](const std::string&) { has_L = true; });

    auto* solve = app.add_subcommand("solve", "minimize the quotient at one period");
    add_common(solve, o);
    double L = 8.0;
    int N = 256, max_iter = 20000;
    std::string summary_path;
    solve->add_option("--L", L, "period")->required();
    solve->add_option("--N", N, "grid size (power of two)");
    solve->add_option("--max-iter", max_iter, "iteration cap");
    solve->add_option("--summary", summary_path, "summary JSON path");

    auto* sweep = app.add_subcommand("sweep", "trace c(L) against c*(L)");
    add_common(sweep, o);
    std::string L_grid;
    double refine = 1e-3;
    int sweep_N = 256;
    sweep->add_option("--L-grid", L_grid, "grid spec a:b:step")->required();
    sweep->add_option("--N", sweep_N, "grid size (power of two)");
    sweep->add_option("--refine", refine, "flip bisection resolution");

    auto* bif = app.add_subcommand("bifurcate", "locate the critical period");
    add_common(bif, o);
    std::string method = "both";
    bif->add_option("--method", method, "gamma | symbol | both")
        ->check(CLI::IsMember({"gamma", "symbol", "both"}));

    auto* ver = app.add_subcommand("verify", "run the verification battery");
    add_common(ver, o);
    bool quick = false;
    ver->add_flag("--quick", quick, "kernel and symbol checks only");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) { // --help
            app.exit(e);
            return exit_ok;
        }
        std::cerr << e.what() << "\n";
        return exit_usage;
    }

    try {
        if (kern->parsed())
            return cmd_kernel(o, xis, xi_grid,
                              has_L ? std::optional<double>(kernel_L)
                                    : std::nullopt);
        if (solve->parsed())
            return cmd_solve(o, L, N, max_iter, summary_path);
        if (sweep->parsed())
            return cmd_sweep(o, L_grid, sweep_N, refine);
        if (bif->parsed())
            return cmd_bifurcate(o, method);
        if (ver->parsed())
            return cmd_verify(o, quick, o.out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const domain_error& e) {
        std::cerr << "parameter error: " << e.what() << "\n";
        return exit_usage;
    } catch (const no_convergence& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return exit_numerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_numerical;
    }
    return exit_usage;
}
