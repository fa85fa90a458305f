#include "spde/heat_solvers.hpp"

#include "spde/error.hpp"
#include "spde/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace spde {

namespace {

std::vector<double> control_volumes(const GridSpec& g) {
    std::vector<double> v(g.nodes(), g.dx());
    v.front() = v.back() = 0.5 * g.dx();
    return v;
}

void check_noise(const HeatProblem& p, const NoiseSource& noise) {
    const GridSpec expected = control_volume_noise_spec(p.grid);
    if (!(noise.spec() == expected)) {
        throw ConfigError("heat solver: noise must be sampled on the half-cell grid with " +
                          std::to_string(expected.cells()) + " cells and " + std::to_string(expected.steps()) +
                          " steps");
    }
}

}  // namespace

void HeatProblem::validate() const {
    if (!(diffusion > 0.0) || !std::isfinite(diffusion)) throw ConfigError("heat: diffusion must be positive");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("heat: lambda must be finite and >= 0");
    if (grid.origin() != 0.0) throw ConfigError("heat: the domain must start at x = 0");
    const double limit = grid.dx() * grid.dx() / (2.0 * diffusion);
    if (grid.dt() > limit * (1.0 + 1e-12)) {
        throw ConfigError("heat: stability requires dt <= dx^2 / (2 D) = " + std::to_string(limit) + ", got dt = " +
                          std::to_string(grid.dt()));
    }
    u0.validate(grid.length());
}

std::vector<Field> solve_heat_em(const HeatProblem& p, const NoiseSource& noise, std::span<const double> snapshot_times,
                                 const StepObserver& observer) {
    p.validate();
    check_noise(p, noise);
    const GridSpec& g = p.grid;
    const std::size_t nx = g.cells();
    const auto wanted = snapshot_steps(g, snapshot_times);
    const double r = p.diffusion * g.dt() / (g.dx() * g.dx());
    const auto vol = control_volumes(g);
    const bool dirichlet = p.boundary == Boundary::Dirichlet;

    std::vector<double> u = p.u0.sample(g);
    if (dirichlet) u.front() = u.back() = 0.0;
    std::vector<double> next(u.size());
    std::vector<double> half(2 * nx);
    std::vector<double> w(nx + 1);

    std::vector<Field> out(wanted.size(), Field{g, 0.0, {}});
    auto record = [&](std::size_t n) {
        for (std::size_t k = 0; k < wanted.size(); ++k) {
            if (wanted[k] == n) out[k] = Field{g, g.time(n), u};
        }
        if (observer) observer(n, u);
    };
    record(0);

    for (std::size_t n = 0; n < g.steps(); ++n) {
        if (p.lambda != 0.0) {
            noise.fill_row(n, half);
            aggregate_to_nodes(half, w);
        } else {
            std::fill(w.begin(), w.end(), 0.0);
        }
        for (std::size_t i = 1; i < nx; ++i) {
            next[i] = u[i] + r * (u[i + 1] - 2.0 * u[i] + u[i - 1]) + p.lambda * p.sigma(u[i]) * w[i] / vol[i];
        }
        if (dirichlet) {
            next.front() = next.back() = 0.0;
        } else {
            next.front() = u.front() + 2.0 * r * (u[1] - u.front()) + p.lambda * p.sigma(u.front()) * w.front() / vol.front();
            next.back() = u.back() + 2.0 * r * (u[nx - 1] - u.back()) + p.lambda * p.sigma(u.back()) * w.back() / vol.back();
        }
        u.swap(next);
        for (double v : u) {
            if (!std::isfinite(v)) {
                throw DomainError("heat solver: solution overflowed at step " + std::to_string(n + 1));
            }
        }
        record(n + 1);
    }
    return out;
}

PicardResult solve_heat_picard(const HeatProblem& p, const NoiseGrid& noise, std::size_t k_max,
                               std::span<const double> snapshot_times) {
    p.validate();
    check_noise(p, noise);
    if (k_max < 1) throw ConfigError("picard: k_max must be >= 1");
    const GridSpec& g = p.grid;
    const std::size_t nodes = g.nodes();
    const std::size_t nt = g.steps();
    const auto wanted = snapshot_steps(g, snapshot_times);
    const auto vol = control_volumes(g);
    const bool dirichlet = p.boundary == Boundary::Dirichlet;
    const KernelParams kp{g.length(), p.boundary, 50, 20, Representation::Auto, p.diffusion};

    // Node noise W^m_j for every step.
    std::vector<double> w((nt) * nodes);
    std::vector<double> half(2 * g.cells());
    for (std::size_t m = 0; m < nt; ++m) {
        noise.fill_row(m, half);
        aggregate_to_nodes(half, std::span<double>(w).subspan(m * nodes, nodes));
    }

    // Cell-averaged kernels Pbar_{lag dt}(x_i, V_j), lag = 0 .. nt - 1.
    std::vector<std::vector<double>> kernel(nt, std::vector<double>(nodes * nodes, 0.0));
    for (std::size_t i = 0; i < nodes; ++i) {
        if (!(dirichlet && (i == 0 || i + 1 == nodes))) kernel[0][i * nodes + i] = 1.0;
    }
    for (std::size_t lag = 1; lag < nt; ++lag) {
        const double tau = static_cast<double>(lag) * g.dt();
        for (std::size_t i = 0; i < nodes; ++i) {
            for (std::size_t j = 0; j < nodes; ++j) {
                const double a = std::max(0.0, g.node(j) - 0.5 * g.dx());
                const double b = std::min(g.length(), g.node(j) + 0.5 * g.dx());
                kernel[lag][i * nodes + j] = heat_kernel_integral(kp, tau, g.node(i), a, b) / vol[j];
            }
        }
    }

    // Deterministic part P_{t_n} u_0.
    const std::vector<double> u0 = p.u0.sample(g);
    std::vector<double> drift((nt + 1) * nodes);
    for (std::size_t n = 0; n <= nt; ++n) {
        auto pu = semigroup_apply(kp, g.time(n), u0);
        if (dirichlet) pu.front() = pu.back() = 0.0;
        std::copy(pu.begin(), pu.end(), drift.begin() + static_cast<std::ptrdiff_t>(n * nodes));
    }

    PicardResult res;
    std::vector<double> path((nt + 1) * nodes);
    for (std::size_t n = 0; n <= nt; ++n) std::copy(u0.begin(), u0.end(), path.begin() + static_cast<std::ptrdiff_t>(n * nodes));
    res.paths.push_back(path);

    const auto sw = simpson_weights(g.cells(), g.dx());
    const auto tw = trapezoid_weights(nt, g.dt());
    std::vector<double> forcing(nt * nodes);
    for (std::size_t k = 0; k < k_max; ++k) {
        const auto& prev = res.paths.back();
        for (std::size_t m = 0; m < nt; ++m) {
            for (std::size_t j = 0; j < nodes; ++j) {
                forcing[m * nodes + j] = p.lambda * p.sigma(prev[m * nodes + j]) * w[m * nodes + j];
            }
        }
        std::vector<double> next(drift);
        for (std::size_t n = 1; n <= nt; ++n) {
            for (std::size_t m = 0; m < n; ++m) {
                const auto& K = kernel[n - 1 - m];
                const double* f = &forcing[m * nodes];
                for (std::size_t i = 0; i < nodes; ++i) {
                    double sum = 0.0;
                    for (std::size_t j = 0; j < nodes; ++j) sum += K[i * nodes + j] * f[j];
                    next[n * nodes + i] += sum;
                }
            }
        }
        double diff = 0.0;
        for (std::size_t n = 0; n <= nt; ++n) {
            for (std::size_t i = 0; i < nodes; ++i) {
                const double d = next[n * nodes + i] - prev[n * nodes + i];
                diff += tw[n] * sw[i] * d * d;
            }
        }
        res.differences.push_back(std::sqrt(diff));
        res.paths.push_back(std::move(next));
    }

    const auto& d = res.differences;
    if (d.size() >= 3) {
        const std::size_t e = d.size();
        if (d[e - 1] > 0.0 && !(d[e - 1] < d[e - 2] && d[e - 2] < d[e - 3])) {
            res.warning = true;
            res.note = "picard: successive differences did not decrease over the last 3 iterates";
        }
    }
    const auto& last = res.paths.back();
    for (std::size_t s : wanted) {
        res.snapshots.push_back(Field{g, g.time(s),
                                      std::vector<double>(last.begin() + static_cast<std::ptrdiff_t>(s * nodes),
                                                          last.begin() + static_cast<std::ptrdiff_t>((s + 1) * nodes))});
    }
    return res;
}

}  // namespace spde
