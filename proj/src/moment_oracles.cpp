#include "spde/moment_oracles.hpp"

#include "spde/error.hpp"
#include "spde/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace spde {

double MomentField::energy_sq(std::size_t n) const {
    const auto w = simpson_weights(spec.cells(), spec.dx());
    double sum = 0.0;
    for (std::size_t i = 0; i < spec.nodes(); ++i) sum += w[i] * at(n, i);
    return sum;
}

HeatMomentVolterra::HeatMomentVolterra(const GridSpec& grid, Boundary boundary, double diffusion)
    : grid_(grid), kernel_{grid.length(), boundary, 50, 20, Representation::Auto, diffusion} {
    kernel_.validate();
    const double h = grid.dt();
    const double dx = grid.dx();
    if (diffusion * h < dx * dx * (1.0 - 1e-12)) {
        throw ConfigError("moment oracle: needs D dt >= dx^2 so the squared kernel is resolved in space");
    }
    const std::size_t nodes = grid.nodes();
    const std::size_t nt = grid.steps();
    const int n = static_cast<int>(grid.cells());
    const auto tw = trapezoid_weights(grid.cells(), dx);

    a_.assign(nt, {});
    b_.assign(nt, {});
    for (std::size_t k = 1; k < nt; ++k) {
        const double lo = static_cast<double>(k) * h;
        const auto rule = gauss_legendre(6, lo, lo + h);
        std::vector<double> ma(nodes * nodes, 0.0);
        std::vector<double> mb(nodes * nodes, 0.0);
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double tau = rule.nodes[q];
            const double wb = (tau - lo) / h;
            const double wa = 1.0 - wb;
            const KernelProfile prof = kernel_profile(kernel_, tau, grid.cells());
            for (int i = 0; i <= n; ++i) {
                for (int j = 0; j <= n; ++j) {
                    const double pv = prof(i, j);
                    const double v = rule.weights[q] * pv * pv * tw[static_cast<std::size_t>(j)];
                    ma[static_cast<std::size_t>(i) * nodes + static_cast<std::size_t>(j)] += wa * v;
                    mb[static_cast<std::size_t>(i) * nodes + static_cast<std::size_t>(j)] += wb * v;
                }
            }
        }
        a_[k] = std::move(ma);
        b_[k] = std::move(mb);
    }

    diag_a_.assign(nodes, 0.0);
    diag_b_.assign(nodes, 0.0);
    const auto rule = gauss_legendre(20, 0.0, 1.0);
    for (std::size_t i = 0; i < nodes; ++i) {
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
            const double v = rule.nodes[q];
            const double tau = h * v * v;
            const double val = diagonal_double_time(kernel_, tau, grid.node(i)) * 2.0 * h * v * rule.weights[q];
            diag_a_[i] += (1.0 - v * v) * val;
            diag_b_[i] += v * v * val;
        }
    }
}

MomentField HeatMomentVolterra::solve(double c, double lambda, const InitialData& u0) const {
    const GridSpec& g = grid_;
    const std::size_t nodes = g.nodes();
    const std::size_t nt = g.steps();
    const double coupling = (lambda * c) * (lambda * c);
    MomentField out{g, std::vector<double>((nt + 1) * nodes, 0.0)};

    const auto u0s = u0.sample(g);
    const bool dirichlet = kernel_.boundary == Boundary::Dirichlet;
    std::vector<double> rhs(nodes);
    for (std::size_t n = 0; n <= nt; ++n) {
        auto pu = semigroup_apply(kernel_, g.time(n), u0s);
        if (dirichlet && n > 0) pu.front() = pu.back() = 0.0;
        for (std::size_t i = 0; i < nodes; ++i) rhs[i] = pu[i] * pu[i];
        if (n > 0 && coupling != 0.0) {
            const double* fprev = &out.values[(n - 1) * nodes];
            for (std::size_t i = 0; i < nodes; ++i) rhs[i] += coupling * diag_b_[i] * fprev[i];
            for (std::size_t k = 1; k < n; ++k) {
                const double* fa = &out.values[(n - k) * nodes];
                const double* fb = &out.values[(n - k - 1) * nodes];
                const auto& A = a_[k];
                const auto& B = b_[k];
                for (std::size_t i = 0; i < nodes; ++i) {
                    double sum = 0.0;
                    const double* ra = &A[i * nodes];
                    const double* rb = &B[i * nodes];
                    for (std::size_t j = 0; j < nodes; ++j) sum += ra[j] * fa[j] + rb[j] * fb[j];
                    rhs[i] += coupling * sum;
                }
            }
        }
        double* f = &out.values[n * nodes];
        for (std::size_t i = 0; i < nodes; ++i) {
            f[i] = (n > 0) ? rhs[i] / (1.0 - coupling * diag_a_[i]) : rhs[i];
        }
    }
    return out;
}

MomentField solve_heat_moment_volterra(const GridSpec& grid, Boundary boundary, double diffusion,
                                       const SigmaSpec& sigma, const InitialData& u0, double lambda) {
    if (sigma.kind() != SigmaSpec::Kind::Linear) {
        throw UnsupportedError("moment oracle: the second-moment equation closes only for linear sigma");
    }
    return HeatMomentVolterra(grid, boundary, diffusion).solve(sigma.slope(), lambda, u0);
}

std::size_t wave_oracle_steps(double c, double lambda, double T) {
    const double n = std::ceil(200.0 * std::abs(lambda * c) * T);
    return std::max<std::size_t>(2000, static_cast<std::size_t>(n));
}

WaveEnergyCurve solve_wave_energy_volterra(const VelocityProfile& v0, double c, double lambda, double T,
                                           std::size_t steps) {
    if (!(T > 0.0) || steps < 1) throw ConfigError("wave oracle: need T > 0 and at least one step");
    const double h = T / static_cast<double>(steps);
    const double k = 0.5 * (lambda * c) * (lambda * c);
    WaveEnergyCurve out;
    out.t.resize(steps + 1);
    out.energy_sq.resize(steps + 1);
    // running trapezoid sums of f_j and t_j f_j over j < n, end point halved
    double sum_f = 0.0;
    double sum_tf = 0.0;
    for (std::size_t n = 0; n <= steps; ++n) {
        const double t = static_cast<double>(n) * h;
        double f = 0.25 * v0.spread_norm_sq(t);
        if (n > 0) f += k * h * (t * sum_f - sum_tf);
        out.t[n] = t;
        out.energy_sq[n] = f;
        const double w = (n == 0) ? 0.5 : 1.0;
        sum_f += w * f;
        sum_tf += w * t * f;
    }
    return out;
}

double wave_energy_sq_at(const WaveEnergyCurve& curve, double t) {
    const double T = curve.t.back();
    const double pos = t / T * static_cast<double>(curve.t.size() - 1);
    const double idx = std::round(pos);
    if (std::abs(pos - idx) > 1e-9 * std::max(1.0, pos) || idx < 0.0 || idx > static_cast<double>(curve.t.size() - 1)) {
        throw ConfigError("wave oracle: t = " + std::to_string(t) + " is not a grid time");
    }
    return curve.energy_sq[static_cast<std::size_t>(idx)];
}

}  // namespace spde
