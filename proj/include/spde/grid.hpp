#pragma once

#include <cstddef>
#include <vector>

namespace spde {

/// Uniform space-time grid on [x0, x0 + L] x [0, T] with nx cells and nt steps.
///
/// Only (L, T, nx, nt) are stored, so nx * dx == L and nt * dt == T hold by
/// construction; dx and dt are derived on demand.
class GridSpec {
public:
    /// Throws ConfigError for non-positive lengths or too few cells/steps.
    static GridSpec make(double L, double T, std::size_t nx, std::size_t nt, double x0 = 0.0);

    double length() const noexcept { return L_; }
    double horizon() const noexcept { return T_; }
    std::size_t cells() const noexcept { return nx_; }
    std::size_t steps() const noexcept { return nt_; }
    double origin() const noexcept { return x0_; }

    double dx() const noexcept { return L_ / static_cast<double>(nx_); }
    double dt() const noexcept { return T_ / static_cast<double>(nt_); }

    std::size_t nodes() const noexcept { return nx_ + 1; }
    double node(std::size_t i) const noexcept { return x0_ + static_cast<double>(i) * dx(); }
    double time(std::size_t n) const noexcept { return static_cast<double>(n) * dt(); }
    std::vector<double> node_positions() const;

    /// Step index whose time matches t within a relative 1e-9; throws ConfigError otherwise.
    std::size_t step_at(double t) const;

    bool operator==(const GridSpec&) const = default;

private:
    GridSpec(double L, double T, std::size_t nx, std::size_t nt, double x0)
        : L_(L), T_(T), nx_(nx), nt_(nt), x0_(x0) {}

    double L_;
    double T_;
    std::size_t nx_;
    std::size_t nt_;
    double x0_;
};

}  // namespace spde
