#include "spde/config.hpp"

#include "spde/error.hpp"

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace spde {

namespace {

const std::set<std::string> kKeys{
    "equation",     "grid.L",        "grid.X",       "grid.T",          "grid.nx",     "grid.nt",
    "diffusion",    "sigma.kind",    "sigma.c",      "sigma.table",     "sigma.left_slope",
    "sigma.right_slope",             "u0.kind",      "u0.value",        "u0.table",    "v0.kind",
    "v0.a",         "v0.table",      "lambda_list",  "t_list",          "replicates",  "seed",
    "method",       "picard.k_max",  "oracle.steps", "bounds.delta",    "bounds.eps",  "verify.beta_list",
    "verify.tau_list",               "output"};

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty() || !std::isfinite(out)) {
        throw ConfigError(key + ": expected a finite number, got '" + v + "'");
    }
    return out;
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& v) {
    const std::string s = trim(v);
    std::uint64_t out = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
        throw ConfigError(key + ": expected a non-negative integer, got '" + v + "'");
    }
    return out;
}

std::vector<std::pair<double, double>> parse_pairs(const std::string& key, const std::string& value) {
    std::vector<std::pair<double, double>> out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto colon = item.find(':');
        if (colon == std::string::npos) throw ConfigError(key + ": expected entries of the form a:b, got '" + item + "'");
        out.emplace_back(parse_real(key, item.substr(0, colon)), parse_real(key, item.substr(colon + 1)));
    }
    if (out.empty()) throw ConfigError(key + ": empty table");
    return out;
}

template <class Point>
std::vector<Point> to_points(const std::vector<std::pair<double, double>>& pairs) {
    std::vector<Point> pts;
    for (const auto& [a, b] : pairs) pts.push_back({a, b});
    return pts;
}

std::string get(const std::map<std::string, std::string>& kv, const std::string& key, const std::string& fallback) {
    const auto it = kv.find(key);
    return it == kv.end() ? fallback : it->second;
}

}  // namespace

std::string to_string(Equation e) {
    switch (e) {
        case Equation::HeatDirichlet: return "heat_dirichlet";
        case Equation::HeatNeumann: return "heat_neumann";
        case Equation::Wave: return "wave";
        case Equation::Pam: return "pam";
    }
    return "?";
}

std::string to_string(Method m) {
    switch (m) {
        case Method::Em: return "em";
        case Method::Picard: return "picard";
        case Method::Oracle: return "oracle";
    }
    return "?";
}

std::vector<double> parse_list(const std::string& key, const std::string& value) {
    std::vector<double> out;
    if (trim(value).empty()) return out;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_real(key, item));
    return out;
}

ExperimentConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::stringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string t = trim(line);
        if (t.empty() || t[0] == '#') continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw ConfigError("line " + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(t.substr(0, eq));
        const std::string value = trim(t.substr(eq + 1));
        if (!kKeys.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": unknown key '" + key + "'");
        if (kv.count(key)) throw ConfigError("line " + std::to_string(lineno) + ": repeated key '" + key + "'");
        kv[key] = value;
    }

    ExperimentConfig c;
    c.raw = kv;
    const std::string eq = get(kv, "equation", "heat_dirichlet");
    if (eq == "heat_dirichlet") c.equation = Equation::HeatDirichlet;
    else if (eq == "heat_neumann") c.equation = Equation::HeatNeumann;
    else if (eq == "wave") c.equation = Equation::Wave;
    else if (eq == "pam") c.equation = Equation::Pam;
    else throw ConfigError("equation: unknown value '" + eq + "'");

    c.lambdas = parse_list("lambda_list", get(kv, "lambda_list", ""));
    c.times = parse_list("t_list", get(kv, "t_list", ""));
    for (double l : c.lambdas) {
        if (l < 0.0) throw ConfigError("lambda_list: values must be >= 0");
    }
    for (double t : c.times) {
        if (t < 0.0) throw ConfigError("t_list: times must be >= 0");
    }

    const std::string m = get(kv, "method", "em");
    if (m == "em") c.method = Method::Em;
    else if (m == "picard") c.method = Method::Picard;
    else if (m == "oracle") c.method = Method::Oracle;
    else throw ConfigError("method: unknown value '" + m + "'");

    // sigma
    const std::string sk = get(kv, "sigma.kind", "linear");
    if (sk == "linear") {
        c.sigma = SigmaSpec::linear(kv.count("sigma.c") ? parse_real("sigma.c", kv["sigma.c"]) : 1.0);
    } else if (sk == "piecewise") {
        if (!kv.count("sigma.table")) throw ConfigError("sigma.table is required for sigma.kind = piecewise");
        auto table = to_points<Breakpoint>(parse_pairs("sigma.table", kv["sigma.table"]));
        std::sort(table.begin(), table.end(), [](const Breakpoint& a, const Breakpoint& b) { return a.z < b.z; });
        auto edge_slope = [&](bool left) {
            if (table.size() < 2) throw ConfigError("sigma: tail slopes are required for a one-point table");
            const auto& a = left ? table[0] : table[table.size() - 2];
            const auto& b = left ? table[1] : table[table.size() - 1];
            return (b.value - a.value) / (b.z - a.z);
        };
        const double ls = kv.count("sigma.left_slope") ? parse_real("sigma.left_slope", kv["sigma.left_slope"]) : edge_slope(true);
        const double rs = kv.count("sigma.right_slope") ? parse_real("sigma.right_slope", kv["sigma.right_slope"]) : edge_slope(false);
        c.sigma = SigmaSpec::piecewise(std::move(table), ls, rs);
    } else {
        throw ConfigError("sigma.kind: unknown value '" + sk + "'");
    }

    // initial data
    const std::string uk = get(kv, "u0.kind", c.equation == Equation::HeatNeumann ? "constant" : "sine");
    if (uk == "sine") c.u0 = InitialData::sine();
    else if (uk == "constant") c.u0 = InitialData::constant(kv.count("u0.value") ? parse_real("u0.value", kv["u0.value"]) : 1.0);
    else if (uk == "table") {
        if (!kv.count("u0.table")) throw ConfigError("u0.table is required for u0.kind = table");
        c.u0 = InitialData::table(to_points<TablePoint>(parse_pairs("u0.table", kv["u0.table"])));
    } else {
        throw ConfigError("u0.kind: unknown value '" + uk + "'");
    }
    const std::string vk = get(kv, "v0.kind", "indicator");
    const double a = kv.count("v0.a") ? parse_real("v0.a", kv["v0.a"]) : 1.0;
    if (vk == "indicator") c.v0 = VelocityProfile::indicator(a);
    else if (vk == "bump") c.v0 = VelocityProfile::bump(a);
    else if (vk == "table") {
        if (!kv.count("v0.table")) throw ConfigError("v0.table is required for v0.kind = table");
        c.v0 = VelocityProfile::table(to_points<TablePoint>(parse_pairs("v0.table", kv["v0.table"])));
    } else {
        throw ConfigError("v0.kind: unknown value '" + vk + "'");
    }

    // pam preset
    if (c.equation == Equation::Pam) {
        if (kv.count("diffusion") && parse_real("diffusion", kv["diffusion"]) != 0.5) {
            throw ConfigError("pam: the preset fixes diffusion = 0.5");
        }
        if (uk != "sine") throw ConfigError("pam: the preset fixes u0 = sin(pi x)");
        if (kv.count("grid.L") && parse_real("grid.L", kv["grid.L"]) != 1.0) throw ConfigError("pam: the preset fixes L = 1");
        c.diffusion = 0.5;
        c.L = 1.0;
        c.nx = 200;
    } else {
        if (kv.count("diffusion")) c.diffusion = parse_real("diffusion", kv["diffusion"]);
        if (kv.count("grid.L")) c.L = parse_real("grid.L", kv["grid.L"]);
        c.nx = c.is_wave() ? 400 : 64;
    }
    if (c.is_wave() && kv.count("grid.L")) throw ConfigError("wave: use grid.X for the window half-width, not grid.L");
    if (!c.is_wave() && kv.count("grid.X")) throw ConfigError("grid.X applies to the wave equation only");
    if (!(c.diffusion > 0.0)) throw ConfigError("diffusion must be positive");
    if (!(c.L > 0.0)) throw ConfigError("grid.L must be positive");

    if (kv.count("grid.T")) c.T = parse_real("grid.T", kv["grid.T"]);
    else if (!c.times.empty()) c.T = *std::max_element(c.times.begin(), c.times.end());
    if (!(c.T > 0.0)) throw ConfigError("grid.T must be positive");
    if (kv.count("grid.nx")) c.nx = parse_unsigned("grid.nx", kv["grid.nx"]);
    if (kv.count("grid.X")) c.X = parse_real("grid.X", kv["grid.X"]);
    if (c.nx < 2) throw ConfigError("grid.nx must be >= 2");
    if (kv.count("grid.nt")) {
        c.nt = parse_unsigned("grid.nt", kv["grid.nt"]);
        if (c.nt < 1) throw ConfigError("grid.nt must be >= 1");
    } else if (c.is_wave()) {
        const double X = c.X.value_or(c.v0.support_radius() + c.T + 1.0);
        c.nt = static_cast<std::size_t>(std::ceil(2.0 * c.T / (2.0 * X / static_cast<double>(c.nx)) - 1e-9));
    } else if (c.method == Method::Oracle) {
        // the oracle wants D dt >= dx^2
        const double dx = c.L / static_cast<double>(c.nx);
        c.nt = std::max<std::size_t>(1, static_cast<std::size_t>(std::floor(c.diffusion * c.T / (dx * dx) + 1e-9)));
    } else {
        const double dx = c.L / static_cast<double>(c.nx);
        c.nt = static_cast<std::size_t>(std::ceil(2.0 * c.diffusion * c.T / (dx * dx) - 1e-9));
    }

    if (kv.count("replicates")) c.replicates = parse_unsigned("replicates", kv["replicates"]);
    if (c.replicates < 1) throw ConfigError("replicates must be >= 1");
    if (kv.count("seed")) c.seed = parse_unsigned("seed", kv["seed"]);
    if (kv.count("picard.k_max")) c.picard_k_max = parse_unsigned("picard.k_max", kv["picard.k_max"]);
    if (kv.count("oracle.steps")) c.oracle_steps = parse_unsigned("oracle.steps", kv["oracle.steps"]);
    if (kv.count("bounds.delta")) c.delta = parse_real("bounds.delta", kv["bounds.delta"]);
    if (kv.count("bounds.eps")) c.eps = parse_real("bounds.eps", kv["bounds.eps"]);
    if (kv.count("verify.beta_list")) c.verify_betas = parse_list("verify.beta_list", kv["verify.beta_list"]);
    if (kv.count("verify.tau_list")) c.verify_taus = parse_list("verify.tau_list", kv["verify.tau_list"]);
    if (kv.count("output")) c.output = kv["output"];
    return c;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config(ss.str());
}

GridSpec ExperimentConfig::grid() const {
    if (is_wave()) {
        const double half = X.value_or(v0.support_radius() + T + 1.0);
        return GridSpec::make(2.0 * half, T, nx, nt, -half);
    }
    return GridSpec::make(L, T, nx, nt);
}

WaveConfig ExperimentConfig::wave_config() const { return WaveConfig{v0, 0.5 * grid().length()}; }

HeatProblem ExperimentConfig::heat_problem(double lambda) const {
    return HeatProblem{grid(), boundary(), sigma, u0, lambda, diffusion};
}

WaveProblem ExperimentConfig::wave_problem(double lambda) const {
    return WaveProblem{grid(), wave_config(), sigma, lambda};
}

void ExperimentConfig::validate() const {
    const GridSpec g = grid();
    for (double t : times) {
        if (t > T * (1.0 + 1e-12)) throw ConfigError("t_list: time " + std::to_string(t) + " exceeds grid.T");
        if (method != Method::Oracle || !is_wave()) g.step_at(t);
    }
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("bounds.delta must lie in (0, 1)");
    if (!(eps > 0.0)) throw ConfigError("bounds.eps must be positive");
    if (is_wave()) {
        if (method != Method::Oracle) wave_problem(lambdas.empty() ? 0.0 : lambdas.front()).validate();
        if (method == Method::Picard) throw ConfigError("method = picard applies to the heat equations only");
    } else if (method == Method::Oracle) {
        u0.validate(L);
    } else {
        heat_problem(lambdas.empty() ? 0.0 : lambdas.front()).validate();
    }
    if (method == Method::Oracle && sigma.kind() != SigmaSpec::Kind::Linear) {
        throw ConfigError("method = oracle needs sigma.kind = linear (the moment equation closes only then)");
    }
    if (method == Method::Oracle && !is_wave() && diffusion * g.dt() < g.dx() * g.dx() * (1.0 - 1e-12)) {
        throw ConfigError("method = oracle needs diffusion * dt >= dx^2; raise grid.nx or lower grid.nt");
    }
}

}  // namespace spde
