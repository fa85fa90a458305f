#include "spde/wave_solver.hpp"

#include "spde/error.hpp"

#include <cmath>

namespace spde {

void WaveProblem::validate() const {
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) throw ConfigError("wave: lambda must be finite and >= 0");
    if (grid.dt() > grid.dx() * (1.0 + 1e-12)) {
        throw ConfigError("wave: CFL requires dt <= dx, got dt = " + std::to_string(grid.dt()) +
                          ", dx = " + std::to_string(grid.dx()));
    }
    const double X = 0.5 * grid.length();
    if (std::abs(grid.origin() + X) > 1e-12 * X) throw ConfigError("wave: grid must be the symmetric window [-X, X]");
    WaveConfig w = wave;
    w.X = X;
    w.validate(grid.horizon());
}

std::vector<Field> solve_wave_em(const WaveProblem& p, const NoiseSource& noise, std::span<const double> snapshot_times,
                                 const StepObserver& observer) {
    p.validate();
    const GridSpec& g = p.grid;
    if (!(noise.spec() == control_volume_noise_spec(g))) {
        throw ConfigError("wave solver: noise must be sampled on the half-cell grid of the window");
    }
    const std::size_t nx = g.cells();
    const auto wanted = snapshot_steps(g, snapshot_times);
    const double dt = g.dt();
    const double r2 = (dt / g.dx()) * (dt / g.dx());
    std::vector<double> vol(nx + 1, g.dx());
    vol.front() = vol.back() = 0.5 * g.dx();

    const auto v0 = p.wave.sample(g);
    std::vector<double> prev(nx + 1, 0.0);
    std::vector<double> cur(nx + 1, 0.0);
    for (std::size_t i = 1; i < nx; ++i) {
        const double lap = (v0[i + 1] - 2.0 * v0[i] + v0[i - 1]) / (g.dx() * g.dx());
        cur[i] = dt * v0[i] + dt * dt * dt * lap / 6.0;
    }
    std::vector<double> next(nx + 1, 0.0);
    std::vector<double> half(2 * nx);
    std::vector<double> w(nx + 1, 0.0);

    std::vector<Field> out(wanted.size(), Field{g, 0.0, {}});
    auto record = [&](std::size_t n, const std::vector<double>& u) {
        for (std::size_t k = 0; k < wanted.size(); ++k) {
            if (wanted[k] == n) out[k] = Field{g, g.time(n), u};
        }
        if (observer) observer(n, u);
    };
    record(0, prev);
    // sigma(w^0) = sigma(0) = 0, so the first noise row never contributes
    record(1, cur);

    for (std::size_t n = 1; n < g.steps(); ++n) {
        if (p.lambda != 0.0) {
            noise.fill_row(n, half);
            aggregate_to_nodes(half, w);
        }
        for (std::size_t i = 1; i < nx; ++i) {
            next[i] = 2.0 * cur[i] - prev[i] + r2 * (cur[i + 1] - 2.0 * cur[i] + cur[i - 1]) +
                      dt * p.lambda * p.sigma(cur[i]) * w[i] / vol[i];
        }
        prev.swap(cur);
        cur.swap(next);
        for (double v : cur) {
            if (!std::isfinite(v)) throw DomainError("wave solver: solution overflowed at step " + std::to_string(n + 1));
        }
        record(n + 1, cur);
    }
    return out;
}

}  // namespace spde
