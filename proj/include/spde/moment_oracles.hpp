#pragma once

#include "spde/grid.hpp"
#include "spde/initial_data.hpp"
#include "spde/kernels.hpp"
#include "spde/sigma.hpp"

#include <vector>

namespace spde {

/// Second moment f_t(x) = E|u_t(x)|^2 on the nodes of a grid, for every time step.
struct MomentField {
    GridSpec spec;
    std::vector<double> values;  // (nt + 1) x (nx + 1), time-major

    double at(std::size_t n, std::size_t i) const { return values[n * spec.nodes() + i]; }
    /// int_0^L f_{t_n}(x) dx, i.e. the squared energy.
    double energy_sq(std::size_t n) const;
};

/// Discretized Volterra equation for the second moment under linear sigma:
///   f_t(x) = (P_t u_0)(x)^2 + (lambda c)^2 int_0^t int_0^L p_{t-s}(x, y)^2 f_s(y) dy ds.
/// f is linear in s on each step. Lags >= 1 use 6-point Gauss-Legendre in s and
/// trapezoid sums in y (spectrally accurate for the Gaussian-like p^2, which
/// needs D dt >= dx^2). On the last step the spatial integral collapses to
/// int p_{t-s}(x, y)^2 dy = p_{2(t-s)}(x, x), integrated against the (t-s)^{-1/2}
/// singularity exactly by the substitution t - s = dt v^2.
/// The lag matrices do not depend on lambda, c or u_0, so one operator serves a
/// whole sweep.
class HeatMomentVolterra {
public:
    HeatMomentVolterra(const GridSpec& grid, Boundary boundary, double diffusion);

    MomentField solve(double c, double lambda, const InitialData& u0) const;

    const GridSpec& grid() const noexcept { return grid_; }

private:
    GridSpec grid_;
    KernelParams kernel_;
    // lag k >= 1: weights on f_{n-k} (a) and f_{n-k-1} (b), row-major nodes x nodes
    std::vector<std::vector<double>> a_;
    std::vector<std::vector<double>> b_;
    std::vector<double> diag_a_;  // lag 0, weight on f_n
    std::vector<double> diag_b_;  // lag 0, weight on f_{n-1}
};

/// Throws UnsupportedError for non-linear sigma.
MomentField solve_heat_moment_volterra(const GridSpec& grid, Boundary boundary, double diffusion,
                                       const SigmaSpec& sigma, const InitialData& u0, double lambda);

struct WaveEnergyCurve {
    std::vector<double> t;
    std::vector<double> energy_sq;  // |E_t|^2
};

/// |E_t|^2 = ||W_t||^2 / 4 + (lambda c)^2 / 2 int_0^t (t - s) |E_s|^2 ds, trapezoid
/// rule with `steps` uniform steps on [0, T]; ||W_t||^2 from the exact antiderivative of v_0.
WaveEnergyCurve solve_wave_energy_volterra(const VelocityProfile& v0, double c, double lambda, double T,
                                           std::size_t steps);

/// Default step count resolving the growth rate lambda |c| / sqrt(2) of |E_t|^2.
std::size_t wave_oracle_steps(double c, double lambda, double T);

/// Interpolates |E_t|^2 at t on the curve's grid (t must be a grid time within 1e-9).
double wave_energy_sq_at(const WaveEnergyCurve& curve, double t);

}  // namespace spde
