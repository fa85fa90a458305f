// Acceptance suite: one PASS/FAIL line per criterion, exit status 0 iff all pass.
#include "spde/analysis.hpp"
#include "spde/config.hpp"
#include "spde/experiments.hpp"
#include "spde/heat_solvers.hpp"
#include "spde/kernels.hpp"
#include "spde/moment_oracles.hpp"
#include "spde/quadrature.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

using namespace spde;

namespace {

constexpr double kPi = std::numbers::pi;

int failures = 0;

void detail(const std::string& s) { std::printf("    %s\n", s.c_str()); }

void verdict(const std::string& name, bool ok, double seconds) {
    std::printf("%s  %s  (%.1f s)\n", ok ? "PASS" : "FAIL", name.c_str(), seconds);
    std::fflush(stdout);
    if (!ok) ++failures;
}

std::string f(const char* fmt, double a) {
    char buf[128];
    std::snprintf(buf, sizeof buf, fmt, a);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void exact_pam() {
    const auto t0 = std::chrono::steady_clock::now();
    HeatProblem p{GridSpec::make(1.0, 0.1, 200, 10000), Boundary::Dirichlet, SigmaSpec::linear(1.0), InitialData::sine(),
                  0.0, 0.5};
    const NoiseStream noise(control_volume_noise_spec(p.grid), 0, 0);
    const std::vector<double> times{0.1};
    const auto u = solve_heat_em(p, noise, times)[0];
    double err = 0.0;
    for (std::size_t i = 0; i < u.values.size(); ++i) {
        err = std::max(err, std::abs(u.values[i] - std::sin(kPi * p.grid.node(i)) * std::exp(-kPi * kPi * 0.05)));
    }
    const double s = seconds_since(t0);
    detail("max error at t = 0.1: " + f("%.3e", err) + " (limit 5e-3), runtime " + f("%.2f s", s) + " (limit 10 s)");
    verdict("exact lambda = 0 PAM solution", err <= 5e-3 && s < 10.0, s);
}

void kernel_identities() {
    const auto t0 = std::chrono::steady_clock::now();
    const KernelParams neu{1.0, Boundary::Neumann, 50, 20, Representation::Images};
    double mass = 0.0;
    for (double t : {1e-3, 2e-3, 5e-3, 1e-2, 2e-2, 5e-2, 0.1, 0.2, 0.5, 1.0}) {
        for (int k = 0; k <= 10; ++k) {
            const double x = k / 10.0;
            const std::vector<double> pts{0.0, x, 1.0};
            const double m = integrate_piecewise([&](double y) { return heat_kernel(neu, t, x, y).value; }, pts, 1e-13);
            mass = std::max(mass, std::abs(m - 1.0));
        }
    }
    double comp = 0.0;
    double diag = 0.0;
    for (Boundary b : {Boundary::Dirichlet, Boundary::Neumann}) {
        const KernelParams p{1.0, b};
        for (double s : {1e-3, 0.01, 0.1, 1.0}) {
            for (double r : {1e-3, 0.05, 0.5}) {
                for (double x : {0.0, 0.25, 0.6}) {
                    for (double z : {0.1, 0.6, 1.0}) {
                        const std::vector<double> pts{0.0, x, z, 1.0};
                        const double lhs = integrate_piecewise(
                            [&](double y) { return heat_kernel(p, s, x, y).value * heat_kernel(p, r, y, z).value; }, pts,
                            1e-13);
                        comp = std::max(comp, std::abs(lhs - heat_kernel(p, s + r, x, z).value));
                    }
                }
            }
            for (double y : {0.0, 0.1, 0.5, 0.9, 1.0}) {
                const std::vector<double> pts{0.0, y, 1.0};
                const double q = integrate_piecewise(
                    [&](double z) {
                        const double v = heat_kernel(p, s, y, z).value;
                        return v * v;
                    },
                    pts, 1e-13);
                diag = std::max(diag, std::abs(q - heat_kernel(p, 2.0 * s, y, y).value));
            }
        }
    }
    detail("Neumann mass deviation " + f("%.3e", mass) + " (limit 1e-10)");
    detail("semigroup composition error " + f("%.3e", comp) + " (limit 1e-8)");
    detail("squared-kernel diagonal error " + f("%.3e", diag) + " (limit 1e-8)");
    verdict("kernel identities", mass <= 1e-10 && comp <= 1e-8 && diag <= 1e-8, seconds_since(t0));
}

void lemma_suite() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    const KernelParams dir{1.0, Boundary::Dirichlet};
    for (double beta : {10.0, 100.0, 1000.0}) {
        const auto rc = resolvent_check(dir, beta, 1.0);
        detail("Dirichlet resolvent beta = " + f("%g", beta) + ": lhs " + f("%.6e", rc.lhs) + " <= " +
               f("%.6e", rc.bound));
        ok = ok && rc.lhs <= rc.bound;
    }
    const KernelParams neu{1.0, Boundary::Neumann};
    const double K = neumann_resolvent_threshold(neu, 1.0);
    detail("Neumann computed threshold " + f("%.6f", K));
    for (double beta : {K * 1.001, 1.0, 10.0, 100.0, 1000.0}) {
        const auto rc = resolvent_check(neu, beta, 1.0, 1.0);
        detail("Neumann resolvent beta = " + f("%g", beta) + ": lhs " + f("%.6e", rc.lhs) + " <= " + f("%.6e", rc.bound));
        ok = ok && rc.asserted && rc.lhs <= rc.bound;
    }
    for (double tau : {0.01, 0.1, 1.0}) {
        const double phi = phi_integral(neu, tau);
        const double lb = std::sqrt(tau / (2.0 * kPi));
        detail("Phi(" + f("%g", tau) + ") = " + f("%.8f", phi) + " >= " + f("%.8f", lb));
        ok = ok && phi >= lb;
    }
    verdict("lemma suite (resolvents, Phi lower bound)", ok, seconds_since(t0));
}

void oracle_vs_mc() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    {
        auto cfg = parse_config(
            "equation = heat_neumann\nsigma.c = 1\ngrid.nx = 20\ngrid.nt = 1200\ngrid.T = 0.3\n"
            "lambda_list = 1\nt_list = 0.3\nreplicates = 10000\nseed = 2024\n");
        cfg.validate();
        const auto mc = sweep_energies(cfg, 0, cfg.seed).entries.at(0);
        const auto g = GridSpec::make(1.0, 0.3, 64, 600);
        const double oracle =
            std::sqrt(HeatMomentVolterra(g, Boundary::Neumann, 1.0).solve(1.0, 1.0, InitialData::constant(1.0)).energy_sq(600));
        const double z = (mc.energy - oracle) / mc.std_error;
        detail("heat: MC " + f("%.6f", mc.energy) + " +- " + f("%.6f", mc.std_error) + ", oracle " + f("%.6f", oracle) +
               ", z = " + f("%.2f", z));
        ok = ok && std::abs(z) <= 3.0;
    }
    {
        auto cfg = parse_config(
            "equation = wave\nsigma.c = 1\nv0.kind = indicator\nv0.a = 1\ngrid.X = 2\ngrid.nx = 200\ngrid.nt = 50\n"
            "grid.T = 0.5\nlambda_list = 1\nt_list = 0.5\nreplicates = 10000\nseed = 2024\n");
        cfg.validate();
        const auto mc = sweep_energies(cfg, 0, cfg.seed).entries.at(0);
        const auto v0 = VelocityProfile::indicator(1.0);
        const double oracle =
            std::sqrt(solve_wave_energy_volterra(v0, 1.0, 1.0, 0.5, wave_oracle_steps(1.0, 1.0, 0.5)).energy_sq.back());
        const double z = (mc.energy - oracle) / mc.std_error;
        detail("wave: MC " + f("%.6f", mc.energy) + " +- " + f("%.6f", mc.std_error) + ", oracle " + f("%.6f", oracle) +
               ", z = " + f("%.2f", z));
        ok = ok && std::abs(z) <= 3.0;
    }
    verdict("oracle vs Monte-Carlo (heat Neumann and wave, 1e4 replicates)", ok, seconds_since(t0));
}

struct Sweeps {
    ExperimentConfig heat_cfg;
    ExperimentConfig wave_cfg;
    EnergyCurve heat;
    EnergyCurve wave;
};

Sweeps oracle_sweeps() {
    Sweeps s;
    s.heat_cfg = parse_config(
        "equation = heat_neumann\nmethod = oracle\nsigma.c = 1\ngrid.nx = 64\ngrid.nt = 500\ngrid.T = 0.5\n"
        "lambda_list = 2, 2.5, 3, 3.5, 4, 4.5, 5\nt_list = 0.5\n");
    s.wave_cfg = parse_config("equation = wave\nmethod = oracle\nsigma.c = 1\nv0.kind = indicator\nv0.a = 1\n"
                              "lambda_list = 20, 40, 80, 160\nt_list = 1\n");
    s.heat_cfg.validate();
    s.wave_cfg.validate();
    s.heat = sweep_energies(s.heat_cfg, 0, 0);
    s.wave = sweep_energies(s.wave_cfg, 0, 0);
    return s;
}

double fit_slope(const EnergyCurve& c, double t, std::vector<double>* loo = nullptr) {
    const auto fit = fit_excitation_index(c, t);
    if (loo) {
        const auto entries = c.at_time(t);
        for (std::size_t k = 0; k < entries.size(); ++k) {
            std::vector<double> l, e;
            for (std::size_t j = 0; j < entries.size(); ++j) {
                if (j == k) continue;
                l.push_back(entries[j].lambda);
                e.push_back(entries[j].energy);
            }
            if (l.size() >= 4) loo->push_back(fit_excitation_index(l, e).slope);
        }
    }
    return fit.slope;
}

void exponents(const Sweeps& s, double t_sweep) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> heat_loo, wave_loo;
    const double heat = fit_slope(s.heat, 0.5, &heat_loo);
    const double wave = fit_slope(s.wave, 1.0, &wave_loo);
    detail("heat Neumann slope on lambda in [2, 5], t = 0.5: " + f("%.4f", heat) + " (bracket [3, 5])");
    detail("wave slope on lambda in {20, 40, 80, 160}, t = 1: " + f("%.4f", wave) + " (bracket [0.7, 1.3])");
    verdict("excitation exponents from the oracles", heat >= 3.0 && heat <= 5.0 && wave >= 0.7 && wave <= 1.3,
            seconds_since(t0) + t_sweep);

    const bool gap = heat - wave >= 2.0;
    detail("index gap heat - wave = " + f("%.4f", heat - wave) + " (at least 2)");
    verdict("property: heat index exceeds wave index by 2", gap, 0.0);
    double worst = 0.0;
    for (double v : heat_loo) worst = std::max(worst, std::abs(v - heat));
    for (double v : wave_loo) worst = std::max(worst, std::abs(v - wave));
    detail("largest leave-one-out slope change " + f("%.4f", worst) + " (below 0.5)");
    verdict("property: fit stability", worst < 0.5, 0.0);
    bool mono = true;
    for (const auto* c : {&s.heat, &s.wave}) {
        for (std::size_t k = 1; k < c->entries.size(); ++k) mono = mono && c->entries[k].energy >= c->entries[k - 1].energy;
    }
    verdict("property: oracle energy nondecreasing in lambda", mono, 0.0);
}

void sandwiches(const Sweeps& s) {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::size_t lower_checked = 0, upper_checked = 0;
    for (const auto* item : {&s.heat, &s.wave}) {
        const auto& cfg = item == &s.heat ? s.heat_cfg : s.wave_cfg;
        for (const auto& r : sandwich(cfg, *item)) {
            detail(to_string(cfg.equation) + " t = " + f("%g", r.t) + " lambda = " + f("%g", r.lambda) +
                   ": log E^2 = " + f("%.4f", std::log(r.energy_sq)) + ", lower " + f("%.4f", r.log_lower) + " " +
                   r.lower_status + ", upper " + f("%.4f", r.log_upper) + " " + r.upper_status);
            ok = ok && !r.failed();
            lower_checked += r.lower_status == "pass";
            upper_checked += r.upper_status == "pass";
        }
    }
    // every grid point must carry both checks
    const std::size_t n = s.heat.entries.size() + s.wave.entries.size();
    ok = ok && lower_checked == n && upper_checked == n;
    detail("lower bounds checked " + std::to_string(lower_checked) + "/" + std::to_string(n) + ", upper " +
           std::to_string(upper_checked) + "/" + std::to_string(n));
    verdict("sandwich inequalities (renewal lower x 0.95, closed-form uppers)", ok, seconds_since(t0));
}

void figure_ordering() {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<double> medians;
    for (double lambda : {0.0, 0.1, 2.0}) {
        auto cfg = parse_config("equation = pam\ngrid.nx = 50\nreplicates = 100\nseed = 17\nlambda_list = " +
                                f("%g", lambda) + "\n");
        RunOptions opts;
        opts.out_dir = std::filesystem::temp_directory_path() / ("spde_acceptance_pam_" + f("%g", lambda));
        const auto rep = run_simulate(cfg, opts);
        for (const auto& line : rep.lines) {
            if (line.rfind("median_max_height = ", 0) == 0) medians.push_back(std::stod(line.substr(20)));
        }
        detail("lambda = " + f("%g", lambda) + ": median max height " + f("%.6f", medians.back()));
    }
    const bool ok = medians.size() == 3 && medians[0] < medians[1] && medians[1] < medians[2];
    verdict("figure ordering of PAM median max heights", ok, seconds_since(t0));
}

}  // namespace

int main() {
    try {
        exact_pam();
        kernel_identities();
        lemma_suite();
        oracle_vs_mc();
        const auto t0 = std::chrono::steady_clock::now();
        const auto s = oracle_sweeps();
        const double t_sweep = seconds_since(t0);
        exponents(s, t_sweep);
        sandwiches(s);
        figure_ordering();
    } catch (const std::exception& e) {
        std::printf("FAIL  acceptance aborted: %s\n", e.what());
        return 1;
    }
    std::printf("%s\n", failures == 0 ? "ALL PASS" : "FAILURES");
    return failures == 0 ? 0 : 1;
}
