#include "spde/grid.hpp"

#include "spde/error.hpp"

#include <cmath>
#include <string>

namespace spde {

GridSpec GridSpec::make(double L, double T, std::size_t nx, std::size_t nt, double x0) {
    if (!(L > 0.0) || !std::isfinite(L)) {
        throw ConfigError("grid: domain length must be positive, got L=" + std::to_string(L));
    }
    if (!(T > 0.0) || !std::isfinite(T)) {
        throw ConfigError("grid: horizon must be positive, got T=" + std::to_string(T));
    }
    if (nx < 2) {
        throw ConfigError("grid: need at least 2 spatial cells, got nx=" + std::to_string(nx));
    }
    if (nt < 1) {
        throw ConfigError("grid: need at least 1 time step, got nt=" + std::to_string(nt));
    }
    return GridSpec(L, T, nx, nt, x0);
}

std::vector<double> GridSpec::node_positions() const {
    std::vector<double> xs(nodes());
    for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = node(i);
    return xs;
}

std::size_t GridSpec::step_at(double t) const {
    const double k = t / dt();
    const double r = std::round(k);
    if (t < 0.0 || r > static_cast<double>(nt_) || std::abs(k - r) > 1e-9 * std::max(1.0, k)) {
        throw ConfigError("grid: time " + std::to_string(t) + " is not a step of dt=" + std::to_string(dt()) +
                          " within [0, T]");
    }
    return static_cast<std::size_t>(r);
}

}  // namespace spde
