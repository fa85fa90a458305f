#include "spde/experiments.hpp"

#include "spde/error.hpp"
#include "spde/heat_solvers.hpp"
#include "spde/moment_oracles.hpp"
#include "spde/quadrature.hpp"
#include "spde/wave_solver.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

namespace spde {

namespace {

namespace fs = std::filesystem;

constexpr double kInf = std::numeric_limits<double>::infinity();

fs::path out_dir(const ExperimentConfig& cfg, const RunOptions& opts) {
    return opts.out_dir.empty() ? fs::path(cfg.output) : opts.out_dir;
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory '" + dir.string() + "'");
}

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.close();
    if (!out) throw IoError("failed writing '" + path.string() + "'");
}

std::string csv_prefix(const std::string& comment) { return comment.empty() ? "" : comment + "\n"; }

std::string fmt(const char* f, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

/// Snapshot steps: the requested times, or 21 evenly spaced steps.
std::vector<std::size_t> snapshot_plan(const ExperimentConfig& cfg, const GridSpec& g) {
    if (!cfg.times.empty()) return snapshot_steps(g, cfg.times);
    std::vector<std::size_t> steps;
    for (std::size_t k = 0; k <= 20; ++k) {
        const auto n = static_cast<std::size_t>(std::llround(static_cast<double>(k * g.steps()) / 20.0));
        if (steps.empty() || steps.back() != n) steps.push_back(n);
    }
    return steps;
}

std::vector<double> times_of(const GridSpec& g, const std::vector<std::size_t>& steps) {
    std::vector<double> t;
    for (auto n : steps) t.push_back(g.time(n));
    return t;
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    const std::size_t n = v.size();
    return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

struct PathRun {
    std::vector<Field> fields;
    double max_height = 0.0;
    std::vector<std::string> notes;
};

PathRun run_path(const ExperimentConfig& cfg, double lambda, std::uint64_t seed, std::uint64_t replicate,
                 std::span<const double> times) {
    PathRun out;
    out.max_height = -kInf;
    auto track = [&](std::size_t, std::span<const double> u) {
        for (double v : u) out.max_height = std::max(out.max_height, v);
    };
    if (cfg.is_wave()) {
        const auto p = cfg.wave_problem(lambda);
        NoiseStream noise(control_volume_noise_spec(p.grid), seed, replicate);
        out.fields = solve_wave_em(p, noise, times, track);
    } else if (cfg.method == Method::Picard) {
        const auto p = cfg.heat_problem(lambda);
        const auto noise = sample_noise(control_volume_noise_spec(p.grid), seed, replicate);
        auto res = solve_heat_picard(p, noise, cfg.picard_k_max, times);
        for (double v : res.paths.back()) out.max_height = std::max(out.max_height, v);
        out.fields = std::move(res.snapshots);
        std::string diffs;
        for (double d : res.differences) diffs += (diffs.empty() ? "" : ",") + format_real(d);
        out.notes.push_back("picard_differences = " + diffs);
        if (res.warning) out.notes.push_back("warning = " + res.note);
    } else {
        const auto p = cfg.heat_problem(lambda);
        NoiseStream noise(control_volume_noise_spec(p.grid), seed, replicate);
        out.fields = solve_heat_em(p, noise, times, track);
    }
    return out;
}

std::string status(bool ok) { return ok ? "pass" : "fail"; }

}  // namespace

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::uint64_t resolve_seed(const ExperimentConfig& cfg, const RunOptions& opts, std::string* comment) {
    if (comment) comment->clear();
    if (opts.seed_flag) return *opts.seed_flag;
    if (opts.env_seed) {
        const std::string& s = *opts.env_seed;
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
            throw ConfigError("SPDE_SEED: expected a non-negative integer, got '" + s + "'");
        }
        if (comment) *comment = "# SPDE_SEED=" + s + " overrides config seed " + std::to_string(cfg.seed);
        return v;
    }
    return cfg.seed;
}

RunReport run_simulate(const ExperimentConfig& cfg, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    if (cfg.lambdas.size() != 1) throw ConfigError("simulate: lambda_list must hold exactly one value");
    if (cfg.method == Method::Oracle) throw ConfigError("simulate: method must be em or picard");
    if (cfg.method == Method::Picard && cfg.replicates > 1) {
        throw ConfigError("simulate: method = picard runs a single replicate");
    }
    std::string comment;
    const std::uint64_t seed = resolve_seed(cfg, opts, &comment);
    const double lambda = cfg.lambdas.front();
    const GridSpec g = cfg.grid();
    const auto steps = snapshot_plan(cfg, g);
    const auto times = times_of(g, steps);

    std::vector<PathRun> runs(cfg.replicates);
    parallel_for(cfg.replicates, opts.workers, [&](std::size_t r) {
        try {
            runs[r] = run_path(cfg, lambda, seed, r, times);
        } catch (const Error& e) {
            throw Error(e.kind(), "replicate " + std::to_string(r) + ": " + e.what());
        }
        if (r != 0) runs[r].fields.clear();
    });

    const fs::path dir = out_dir(cfg, opts);
    ensure_dir(dir);
    RunReport rep;
    std::string csv = csv_prefix(comment) + "t,x,value\n";
    for (const auto& f : runs[0].fields) {
        for (std::size_t i = 0; i < f.values.size(); ++i) {
            csv += format_real(f.t) + "," + format_real(f.spec.node(i)) + "," + format_real(f.values[i]) + "\n";
        }
    }
    write_file(dir / "fields.csv", csv);
    rep.files.push_back(dir / "fields.csv");

    double max0 = -kInf;
    for (double v : runs[0].fields.front().values) max0 = std::max(max0, v);
    rep.lines.push_back("equation = " + to_string(cfg.equation));
    rep.lines.push_back("method = " + to_string(cfg.method));
    rep.lines.push_back("lambda = " + format_real(lambda));
    rep.lines.push_back("seed = " + std::to_string(seed));
    rep.lines.push_back("grid = nx " + std::to_string(g.cells()) + ", nt " + std::to_string(g.steps()) + ", dx " +
                        format_real(g.dx()) + ", dt " + format_real(g.dt()));
    rep.lines.push_back("max_first_snapshot = " + format_real(max0));
    rep.lines.push_back("max_height = " + format_real(runs[0].max_height));
    for (const auto& n : runs[0].notes) rep.lines.push_back(n);
    if (cfg.replicates > 1) {
        std::string mh = csv_prefix(comment) + "replicate,max\n";
        std::vector<double> maxima;
        for (std::size_t r = 0; r < runs.size(); ++r) {
            mh += std::to_string(r) + "," + format_real(runs[r].max_height) + "\n";
            maxima.push_back(runs[r].max_height);
        }
        write_file(dir / "max_heights.csv", mh);
        rep.files.push_back(dir / "max_heights.csv");
        rep.lines.push_back("replicates = " + std::to_string(cfg.replicates));
        rep.lines.push_back("median_max_height = " + format_real(median(maxima)));
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.lines.push_back("wall_time = " + fmt("%.3f", wall));
    std::string summary;
    for (const auto& l : rep.lines) summary += l + "\n";
    write_file(dir / "summary.txt", summary);
    rep.files.push_back(dir / "summary.txt");
    return rep;
}

EnergyCurve sweep_energies(const ExperimentConfig& cfg, unsigned workers, std::uint64_t seed) {
    std::vector<double> times = cfg.times;
    if (times.empty()) times.push_back(cfg.T);
    EnergyCurve curve;
    if (cfg.method == Method::Oracle) {
        if (cfg.is_wave()) {
            const double c = cfg.sigma.slope();
            // rows are t-major
            std::vector<std::vector<double>> e(times.size(), std::vector<double>(cfg.lambdas.size()));
            for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
                for (std::size_t k = 0; k < times.size(); ++k) {
                    const double t = times[k];
                    if (t == 0.0) {
                        e[k][l] = 0.0;
                        continue;
                    }
                    const double lam = cfg.lambdas[l];
                    const auto steps = cfg.oracle_steps.value_or(wave_oracle_steps(c, lam, t));
                    e[k][l] = solve_wave_energy_volterra(cfg.v0, c, lam, t, steps).energy_sq.back();
                }
            }
            for (std::size_t k = 0; k < times.size(); ++k) {
                for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
                    curve.entries.push_back({times[k], cfg.lambdas[l], std::sqrt(e[k][l]), 0.0, EnergyMethod::Oracle, 0});
                }
            }
        } else {
            const GridSpec g = cfg.grid();
            const HeatMomentVolterra op(g, cfg.boundary(), cfg.diffusion);
            std::vector<MomentField> sols;
            for (double lam : cfg.lambdas) sols.push_back(op.solve(cfg.sigma.slope(), lam, cfg.u0));
            for (double t : times) {
                const std::size_t n = g.step_at(t);
                for (std::size_t l = 0; l < cfg.lambdas.size(); ++l) {
                    curve.entries.push_back(
                        {t, cfg.lambdas[l], std::sqrt(sols[l].energy_sq(n)), 0.0, EnergyMethod::Oracle, 0});
                }
            }
        }
        return curve;
    }
    if (cfg.method == Method::Picard) throw ConfigError("sweep: method must be em or oracle");
    if (cfg.replicates < 2) throw ConfigError("sweep: Monte-Carlo needs replicates >= 2");
    std::vector<EnergyCurve> per_lambda;
    for (double lam : cfg.lambdas) {
        const ReplicateRun run = [&](std::uint64_t r, std::span<double> out) {
            const auto path = run_path(cfg, lam, seed, r, times);
            for (std::size_t k = 0; k < out.size(); ++k) out[k] = l2_norm_sq(path.fields[k].spec, path.fields[k].values);
        };
        per_lambda.push_back(estimate_energy_mc(run, times, lam, cfg.replicates, workers));
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        for (const auto& pl : per_lambda) curve.entries.push_back(pl.entries[k]);
    }
    return curve;
}

std::vector<SandwichRow> sandwich(const ExperimentConfig& cfg, const EnergyCurve& curve) {
    const double ell = cfg.sigma.ell();
    const double lip = cfg.sigma.lip();
    std::vector<SandwichRow> rows;
    double a1 = 0.0;
    if (cfg.is_wave()) {
        double tmax = 0.0;
        for (const auto& e : curve.entries) tmax = std::max(tmax, e.t);
        std::vector<double> grid;
        for (int k = 1; k <= 64; ++k) grid.push_back(tmax * k / 64.0);
        if (tmax > 0.0) a1 = a1_empirical(cfg.v0, grid);
    }
    double threshold = 0.0;
    if (cfg.equation == Equation::HeatNeumann) {
        threshold = neumann_resolvent_threshold(KernelParams{cfg.L, Boundary::Neumann, 50, 20, Representation::Auto,
                                                             cfg.diffusion},
                                                cfg.eps);
    }
    for (const auto& e : curve.entries) {
        SandwichRow row;
        row.t = e.t;
        row.lambda = e.lambda;
        row.energy_sq = e.energy * e.energy;
        row.log_lower = -kInf;
        row.log_upper = kInf;
        if (e.t <= 0.0) {
            rows.push_back(row);
            continue;
        }
        const double log_e2 = std::log(row.energy_sq);
        if (cfg.is_wave()) {
            const auto rs = renewal_series_wave(e.t, e.lambda, ell, a1, cfg.v0.l2_norm_sq(), 400);
            if (rs.asserted) {
                row.log_lower = std::log(0.95 * rs.closed);
                row.lower_status = status(log_e2 >= row.log_lower);
            }
            const auto b = bound_wave(e.t, e.lambda, ell, lip, VelocityNorms::of(cfg.v0), cfg.delta);
            if (std::isfinite(b.log_upper)) {
                row.log_upper = b.log_upper;
                row.upper_status = status(log_e2 <= row.log_upper);
            }
        } else if (cfg.equation == Equation::HeatNeumann) {
            // the explicit heat bounds are stated for the unit-diffusion equation
            if (cfg.diffusion == 1.0) {
                const double floor = cfg.u0.inf_value(cfg.L);
                if (floor > 0.0 && e.lambda > 0.0) {
                    const double x = std::pow(e.lambda * ell, 4) * e.t / (4.0 * std::numbers::pi * std::numbers::e);
                    if (x <= 500.0) {
                        row.log_lower = std::log(0.95 * renewal_series_heat(e.t, e.lambda, ell, floor, cfg.L, 64).partial);
                    } else {
                        row.log_lower = std::log(0.95 * floor * floor * cfg.L) + x;
                    }
                    row.lower_status = status(log_e2 >= row.log_lower);
                }
                NeumannContext ctx{cfg.L, floor, cfg.u0.sup_value(cfg.L), cfg.eps, cfg.delta, threshold};
                const auto b = bound_heat_neumann(e.t, e.lambda, ell, lip, ctx);
                if (std::isfinite(b.log_upper)) {
                    row.log_upper = b.log_upper;
                    row.upper_status = status(log_e2 <= row.log_upper);
                }
            }
        } else if (cfg.diffusion == 1.0 || cfg.equation == Equation::Pam) {
            // E|u_t(x)|^2 <= a-priori bound pointwise; integrate over [0, L]
            row.log_upper = std::log(cfg.L) + log_bound_moment_apriori(e.t, e.lambda, lip, 2, cfg.delta,
                                                                        cfg.u0.sup_value(cfg.L));
            row.upper_status = status(log_e2 <= row.log_upper);
        }
        rows.push_back(row);
    }
    return rows;
}

RunReport run_sweep(const ExperimentConfig& cfg, const RunOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    cfg.validate();
    if (cfg.lambdas.empty()) throw ConfigError("sweep: lambda_list is empty");
    std::string comment;
    const std::uint64_t seed = resolve_seed(cfg, opts, &comment);
    const EnergyCurve curve = sweep_energies(cfg, opts.workers, seed);
    const auto rows = sandwich(cfg, curve);

    const fs::path dir = out_dir(cfg, opts);
    ensure_dir(dir);
    RunReport rep;
    std::string csv = csv_prefix(comment) + "t,lambda,energy,stderr,method,replicates\n";
    for (const auto& e : curve.entries) {
        csv += format_real(e.t) + "," + format_real(e.lambda) + "," + format_real(e.energy) + "," +
               format_real(e.std_error) + "," + to_string(e.method) + "," + std::to_string(e.replicates) + "\n";
    }
    write_file(dir / "energy.csv", csv);
    rep.files.push_back(dir / "energy.csv");

    rep.lines.push_back("equation = " + to_string(cfg.equation));
    rep.lines.push_back("method = " + to_string(cfg.method));
    rep.lines.push_back("seed = " + std::to_string(seed));
    std::vector<double> times;
    for (const auto& e : curve.entries) {
        if (times.empty() || times.back() != e.t) times.push_back(e.t);
    }
    for (double t : times) {
        if (t <= 0.0) continue;
        const std::string tag = "t=" + fmt("%g", t);
        if (curve.at_time(t).size() < 4) {
            rep.lines.push_back("fit " + tag + ": skipped (fewer than 4 lambda values)");
            continue;
        }
        try {
            const auto fit = fit_excitation_index(curve, t);
            std::string line = "fit " + tag + ": slope = " + fmt("%.6f", fit.slope) + ", intercept = " +
                               fmt("%.6f", fit.intercept) + ", r2 = " + fmt("%.6f", fit.r2) +
                               ", points = " + std::to_string(fit.used);
            if (!fit.dropped_lambdas.empty()) {
                line += ", dropped lambda (energy <= 1):";
                for (double l : fit.dropped_lambdas) line += " " + format_real(l);
            }
            rep.lines.push_back(line);
        } catch (const DomainError& e) {
            rep.lines.push_back("fit " + tag + ": FAILED (" + std::string(e.what()) + ")");
            rep.passed = false;
        }
    }
    for (const auto& r : rows) {
        rep.lines.push_back("sandwich t=" + fmt("%g", r.t) + " lambda=" + fmt("%g", r.lambda) +
                            ": log_energy_sq = " + fmt("%.6g", std::log(r.energy_sq)) + ", lower " + r.lower_status +
                            " (" + fmt("%.6g", r.log_lower) + "), upper " + r.upper_status + " (" +
                            fmt("%.6g", r.log_upper) + ")");
        if (r.failed()) rep.passed = false;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    rep.lines.push_back("wall_time = " + fmt("%.3f", wall));
    rep.lines.push_back(rep.passed ? "PASS" : "FAIL");
    std::string summary;
    for (const auto& l : rep.lines) summary += l + "\n";
    write_file(dir / "summary.txt", summary);
    rep.files.push_back(dir / "summary.txt");
    return rep;
}

double VerifyCheck::margin() const {
    if (relation == ">=") return measured - bound;
    return bound - measured;
}

std::vector<VerifyCheck> verify_checks(const ExperimentConfig& cfg) {
    std::vector<VerifyCheck> out;
    auto le = [&](std::string name, double measured, double bound) {
        out.push_back({std::move(name), measured, bound, measured <= bound, "<="});
    };
    auto ge = [&](std::string name, double measured, double bound) {
        out.push_back({std::move(name), measured, bound, measured >= bound, ">="});
    };
    const double L = cfg.is_wave() ? 1.0 : cfg.L;
    KernelParams neu{L, Boundary::Neumann, 50, 20, Representation::Images, 1.0};
    KernelParams dir{L, Boundary::Dirichlet};

    double worst = 0.0;
    for (double t : {1e-3, 1e-2, 0.1, 1.0}) {
        for (double x : {0.0, 0.1 * L, 0.5 * L, 0.9 * L, L}) {
            const double m = integrate_piecewise([&](double y) { return heat_kernel(neu, t, x, y).value; },
                                                 std::vector<double>{0.0, x, L}, 1e-13);
            worst = std::max(worst, std::abs(m - 1.0));
        }
    }
    le("neumann_mass_deviation (20 images, t in [1e-3, 1])", worst, 1e-10);

    const double dmass = integrate_piecewise([&](double y) { return heat_kernel(dir, 0.1, 0.5 * L, y).value; },
                                             std::vector<double>{0.0, 0.5 * L, L}, 1e-13);
    le("dirichlet_mass (x = L/2, t = 0.1) < 1", dmass, 1.0);
    out.back().passed = dmass < 1.0;

    for (const auto& p : {KernelParams{L, Boundary::Dirichlet}, KernelParams{L, Boundary::Neumann}}) {
        double comp = 0.0;
        double diag = 0.0;
        for (double s : {0.01, 0.1, 1.0}) {
            for (double r : {0.01, 0.3}) {
                const double x = 0.3 * L;
                const double z = 0.8 * L;
                const double lhs = integrate_piecewise(
                    [&](double y) { return heat_kernel(p, s, x, y).value * heat_kernel(p, r, y, z).value; },
                    std::vector<double>{0.0, x, z, L}, 1e-13);
                comp = std::max(comp, std::abs(lhs - heat_kernel(p, s + r, x, z).value));
            }
            for (double y : {0.0, 0.3 * L, L}) {
                const double q = integrate_piecewise(
                    [&](double z) {
                        const double v = heat_kernel(p, s, y, z).value;
                        return v * v;
                    },
                    std::vector<double>{0.0, y, L}, 1e-13);
                diag = std::max(diag, std::abs(q - diagonal_double_time(p, s, y)));
            }
        }
        le("semigroup_composition_error (" + to_string(p.boundary) + ")", comp, 1e-8);
        le("squared_kernel_diagonal_error (" + to_string(p.boundary) + ")", diag, 1e-8);

        double pmin = kInf;
        for (double t : {1e-3, 0.1, 1.0}) {
            for (int i = 1; i < 20; ++i) {
                for (int j = 1; j < 20; ++j) pmin = std::min(pmin, heat_kernel(p, t, i * L / 20, j * L / 20).value);
            }
        }
        ge("kernel_positivity_min (" + to_string(p.boundary) + ")", pmin, 0.0);
        out.back().passed = pmin > 0.0;

        const double rel = std::abs(heat_kernel(p, 1e-4, 0.5 * L, 0.5 * L).value / heat_fundamental(1e-4, 0.0) - 1.0);
        le("small_time_vs_gamma (" + to_string(p.boundary) + ", t = 1e-4)", rel, 1e-6);
    }

    for (double beta : cfg.verify_betas) {
        const auto rc = resolvent_check(dir, beta, 1.0);
        le("dirichlet_resolvent beta=" + fmt("%g", beta), rc.lhs, rc.bound);
        le("dirichlet_resolvent_vs_series beta=" + fmt("%g", beta), rc.lhs, dirichlet_resolvent_series(L, beta));
    }
    const double K = neumann_resolvent_threshold(KernelParams{L, Boundary::Neumann}, cfg.eps);
    for (double beta : cfg.verify_betas) {
        const auto rc = resolvent_check(KernelParams{L, Boundary::Neumann}, beta, 1.0, cfg.eps);
        if (!rc.asserted) continue;
        le("neumann_resolvent beta=" + fmt("%g", beta) + " (threshold " + fmt("%.6g", K) + ")", rc.lhs, rc.bound);
    }
    for (double tau : cfg.verify_taus) {
        ge("phi tau=" + fmt("%g", tau) + " vs L sqrt(tau / 2 pi)", phi_integral(KernelParams{L, Boundary::Neumann}, tau),
           L * std::sqrt(tau / (2.0 * std::numbers::pi)));
    }
    for (double t : {0.1, 1.0, 10.0}) {
        const auto cb = convolution_bound(cfg.v0, t);
        le("convolution_integral t=" + fmt("%g", t) + " vs A2 H(t)", cb.integral, cb.a2 * cb.h);
    }
    return out;
}

RunReport run_verify(const ExperimentConfig& cfg, const RunOptions& opts) {
    const auto checks = verify_checks(cfg);
    RunReport rep;
    for (const auto& c : checks) {
        char buf[512];
        std::snprintf(buf, sizeof buf, "%-58s measured = %.10e  bound %s %.10e  margin = %.3e  %s", c.name.c_str(),
                      c.measured, c.relation == ">=" ? "(lower)" : "(upper)", c.bound, c.margin(),
                      c.passed ? "PASS" : "FAIL");
        rep.lines.push_back(buf);
        if (!c.passed) rep.passed = false;
    }
    rep.lines.push_back(rep.passed ? "PASS" : "FAIL");
    const fs::path dir = out_dir(cfg, opts);
    ensure_dir(dir);
    std::string text;
    for (const auto& l : rep.lines) text += l + "\n";
    write_file(dir / "verify.txt", text);
    rep.files.push_back(dir / "verify.txt");
    return rep;
}

std::vector<BoundSet> bound_table(const ExperimentConfig& cfg) {
    const double ell = cfg.sigma.ell();
    const double lip = cfg.sigma.lip();
    std::vector<double> times = cfg.times;
    if (times.empty()) times.push_back(cfg.T);
    std::vector<BoundSet> out;
    double threshold = 0.0;
    if (cfg.equation == Equation::HeatNeumann) {
        threshold = neumann_resolvent_threshold(KernelParams{cfg.L, Boundary::Neumann}, cfg.eps);
    }
    for (double t : times) {
        if (t <= 0.0) continue;
        for (double lam : cfg.lambdas) {
            switch (cfg.equation) {
                case Equation::HeatDirichlet:
                case Equation::Pam: {
                    out.push_back(bound_heat_dirichlet(t, lam, ell, lip));
                    BoundSet m;
                    m.theorem = Theorem::MomentApriori;
                    m.t = t;
                    m.lambda = lam;
                    m.ell = ell;
                    m.lip = lip;
                    m.delta = cfg.delta;
                    m.log_upper = log_bound_moment_apriori(t, lam, lip, 2, cfg.delta, cfg.u0.sup_value(cfg.L));
                    m.upper = std::exp(m.log_upper);
                    m.note = "pointwise E|u_t(x)|^2";
                    out.push_back(m);
                    break;
                }
                case Equation::HeatNeumann: {
                    NeumannContext ctx{cfg.L, cfg.u0.inf_value(cfg.L), cfg.u0.sup_value(cfg.L), cfg.eps, cfg.delta,
                                       threshold};
                    out.push_back(bound_heat_neumann(t, lam, ell, lip, ctx));
                    out.push_back(bound_prop_energy(t, lam, ell, ctx));
                    break;
                }
                case Equation::Wave: {
                    out.push_back(bound_wave(t, lam, ell, lip, VelocityNorms::of(cfg.v0), cfg.delta));
                    break;
                }
            }
        }
    }
    return out;
}

RunReport run_bounds(const ExperimentConfig& cfg, const RunOptions& opts) {
    if (cfg.lambdas.empty()) throw ConfigError("bounds: lambda_list is empty");
    const auto table = bound_table(cfg);
    RunReport rep;
    std::string csv = "theorem,t,lambda,ell,lip,lower_rate,lower_power,upper_rate,upper_power,log_lower,log_upper\n";
    char buf[512];
    std::snprintf(buf, sizeof buf, "%-18s %8s %10s %14s %3s %14s %3s %14s %14s", "theorem", "t", "lambda", "lower_rate",
                  "e", "upper_rate", "e", "log_lower", "log_upper");
    rep.lines.push_back(buf);
    for (const auto& b : table) {
        csv += to_string(b.theorem) + "," + format_real(b.t) + "," + format_real(b.lambda) + "," + format_real(b.ell) +
               "," + format_real(b.lip) + "," + format_real(b.lower_rate) + "," + std::to_string(b.lower_power) + "," +
               format_real(b.upper_rate) + "," + std::to_string(b.upper_power) + "," + format_real(b.log_lower) + "," +
               format_real(b.log_upper) + "\n";
        std::snprintf(buf, sizeof buf, "%-18s %8.4g %10.4g %14.8g %3d %14.8g %3d %14.6g %14.6g %s",
                      to_string(b.theorem).c_str(), b.t, b.lambda, b.lower_rate, b.lower_power, b.upper_rate,
                      b.upper_power, b.log_lower, b.log_upper, b.note.c_str());
        rep.lines.push_back(buf);
    }
    const fs::path dir = out_dir(cfg, opts);
    ensure_dir(dir);
    write_file(dir / "bounds.csv", csv);
    rep.files.push_back(dir / "bounds.csv");
    return rep;
}

}  // namespace spde
