#include "fyamabe/io.hpp"
#include "fyamabe/errors.hpp"

#include <json.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>

namespace fyamabe::io {

using nlohmann::json;

std::string num(double x)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

std::string timestamp_line()
{
    std::time_t t = std::time(nullptr);
    char buf[80];
    std::strftime(buf, sizeof buf, "# generated %Y-%m-%dT%H:%M:%SZ\n",
                  std::gmtime(&t));
    return buf;
}

const char* cls_name(Classification c)
{
    return c == Classification::constant ? "constant" : "nonconstant";
}

const char* init_name(InitKind k)
{
    switch (k) {
    case InitKind::constant: return "constant";
    case InitKind::cos_perturbed: return "cos-perturbed";
    case InitKind::bubble: return "bubble";
    }
    return "?";
}

} // namespace

void write_file_atomic(const std::string& path, const std::string& text)
{
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os)
            throw error("cannot open " + tmp + " for writing");
        os << text;
    }
    if (std::rename(tmp.c_str(), path.c_str()) != 0)
        throw error("cannot rename " + tmp + " to " + path);
}

std::string profile_to_csv(const PeriodicProfile& p, bool timestamp)
{
    std::ostringstream os;
    os << "# fyamabe profile schema_version=" << schema_version << "\n";
    if (timestamp)
        os << timestamp_line();
    os << "# L=" << num(p.L) << " N=" << p.N << "\n";
    os << "t,v\n";
    for (int j = 0; j < p.N; ++j)
        os << num(j * p.L / p.N) << "," << num(p.values[j]) << "\n";
    return os.str();
}

std::string profile_to_json(const PeriodicProfile& p)
{
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = "profile";
    j["L"] = p.L;
    j["N"] = p.N;
    j["values"] = p.values;
    return j.dump(2) + "\n";
}

PeriodicProfile read_profile(const std::string& path)
{
    std::ifstream is(path, std::ios::binary);
    if (!is)
        throw error("cannot open " + path);
    std::stringstream ss;
    ss << is.rdbuf();
    std::string text = ss.str();

    // JSON?
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        json j = json::parse(text);
        PeriodicProfile p;
        p.L = j.at("L").get<double>();
        p.N = j.at("N").get<int>();
        p.values = j.at("values").get<std::vector<double>>();
        return p;
    }

    PeriodicProfile p;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (line.empty() || line[0] == '#')
        {
            const auto lpos = line.find("L=");
            if (lpos != std::string::npos)
                p.L = std::strtod(line.c_str() + lpos + 2, nullptr);
            continue;
        }
        if (line.rfind("t,", 0) == 0)
            continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos)
            continue;
        p.values.push_back(std::strtod(line.c_str() + comma + 1, nullptr));
    }
    p.N = static_cast<int>(p.values.size());
    if (p.N == 0 || p.L <= 0.0)
        throw error("malformed profile file " + path);
    return p;
}

void write_profile(const std::string& path, const PeriodicProfile& p,
                   Format fmt, bool timestamp)
{
    write_file_atomic(path, fmt == Format::csv ? profile_to_csv(p, timestamp)
                                               : profile_to_json(p));
}

std::string solve_summary_json(const ModelParams& mp, const MinimizeResult& r)
{
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = "solve-summary";
    j["n"] = mp.n;
    j["gamma"] = mp.gamma;
    j["L"] = r.profile.L;
    j["N"] = r.profile.N;
    j["c"] = r.c_value;
    j["cstar"] = r.cstar_value;
    j["classification"] = cls_name(r.classification);
    j["amplitude"] = r.amplitude;
    j["residual"] = r.residual;
    j["iterations"] = r.iterations;
    j["init_used"] = init_name(r.init_used);
    j["converged"] = r.converged;
    j["ambiguous"] = r.ambiguous;
    return j.dump(2) + "\n";
}

std::string sweep_to_csv(const std::vector<SweepRecord>& recs, bool timestamp)
{
    std::ostringstream os;
    os << "# fyamabe sweep schema_version=" << schema_version << "\n";
    if (timestamp)
        os << timestamp_line();
    os << "L,c,cstar,classification,amplitude,residual\n";
    for (const auto& r : recs) {
        if (!r.ok) {
            os << num(r.L) << ",,,failed,,\n";
            continue;
        }
        os << num(r.L) << "," << num(r.c) << "," << num(r.cstar) << ","
           << cls_name(r.classification) << "," << num(r.amplitude) << ","
           << num(r.residual) << "\n";
    }
    return os.str();
}

std::string sweep_to_json(const std::vector<SweepRecord>& recs)
{
    json arr = json::array();
    for (const auto& r : recs) {
        json j;
        j["L"] = r.L;
        j["ok"] = r.ok;
        if (r.ok) {
            j["c"] = r.c;
            j["cstar"] = r.cstar;
            j["classification"] = cls_name(r.classification);
            j["amplitude"] = r.amplitude;
            j["residual"] = r.residual;
            j["refined"] = r.refined;
        } else {
            j["error"] = r.error;
        }
        arr.push_back(j);
    }
    json top;
    top["schema_version"] = schema_version;
    top["kind"] = "sweep";
    top["records"] = arr;
    return top.dump(2) + "\n";
}

std::string bifurcation_to_json(const ModelParams& mp,
                                const BifurcationResult& r)
{
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = "bifurcation";
    j["n"] = mp.n;
    j["gamma"] = mp.gamma;
    if (std::isfinite(r.L0_gamma_formula))
        j["L0_gamma_formula"] = r.L0_gamma_formula;
    if (std::isfinite(r.L0_symbol))
        j["L0_symbol"] = r.L0_symbol;
    j["lambda0"] = r.lambda0;
    if (std::isfinite(r.agreement))
        j["agreement"] = r.agreement;
    json samples = json::array();
    for (const auto& [L, d] : r.delta_samples)
        samples.push_back({L, d});
    j["delta_samples"] = samples;
    return j.dump(2) + "\n";
}

std::string kernel_table_to_csv(const std::vector<KernelRow>& rows,
                                bool with_KL, bool timestamp)
{
    std::ostringstream os;
    os << "# fyamabe kernel schema_version=" << schema_version << "\n";
    if (timestamp)
        os << timestamp_line();
    os << "xi,K_closed,K_direct,relative_gap";
    if (with_KL)
        os << ",K_L";
    os << "\n";
    for (const auto& r : rows) {
        os << num(r.xi) << "," << num(r.closed) << "," << num(r.direct) << ","
           << num(r.rel_gap);
        if (with_KL)
            os << "," << num(r.periodized);
        os << "\n";
    }
    return os.str();
}

std::string kernel_table_to_json(const std::vector<KernelRow>& rows,
                                 bool with_KL)
{
    json arr = json::array();
    for (const auto& r : rows) {
        json j;
        j["xi"] = r.xi;
        j["K_closed"] = r.closed;
        j["K_direct"] = r.direct;
        j["relative_gap"] = r.rel_gap;
        if (with_KL)
            j["K_L"] = r.periodized;
        arr.push_back(j);
    }
    json top;
    top["schema_version"] = schema_version;
    top["kind"] = "kernel-table";
    top["rows"] = arr;
    return top.dump(2) + "\n";
}

} // namespace fyamabe::io
