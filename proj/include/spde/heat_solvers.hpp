#pragma once

#include "spde/field.hpp"
#include "spde/initial_data.hpp"
#include "spde/kernels.hpp"
#include "spde/noise.hpp"
#include "spde/sigma.hpp"

#include <string>
#include <vector>

namespace spde {

/// du = D u'' dt + lambda sigma(u) xi on [0, L].
struct HeatProblem {
    GridSpec grid;
    Boundary boundary = Boundary::Dirichlet;
    SigmaSpec sigma = SigmaSpec::linear(1.0);
    InitialData u0 = InitialData::sine();
    double lambda = 0.0;
    double diffusion = 1.0;

    /// Throws ConfigError when dt > dx^2 / (2 D) or the data are invalid.
    void validate() const;
};

/// Explicit Euler-Maruyama on the nodes x_i = i dx. Node i owns the control
/// volume [x_i - dx/2, x_i + dx/2] clipped to [0, L]; its noise is the white-noise
/// integral over that volume, so `noise` must live on control_volume_noise_spec(grid).
///   u_i <- u_i + dt D (u_{i+1} - 2 u_i + u_{i-1}) / dx^2 + lambda sigma(u_i) W_i / |V_i|
/// Dirichlet pins the end nodes to 0; Neumann mirrors u_{-1} = u_1, u_{nx+1} = u_{nx-1}.
/// Returns a Field for each requested time, in the order given.
std::vector<Field> solve_heat_em(const HeatProblem& problem, const NoiseSource& noise,
                                 std::span<const double> snapshot_times, const StepObserver& observer = {});

struct PicardResult {
    std::vector<Field> snapshots;             // final iterate at the requested times
    std::vector<std::vector<double>> paths;   // iterate k as a flat (nt + 1) x (nx + 1) array, k = 0..k_max
    std::vector<double> differences;          // space-time L^2 norm of iterate k+1 minus iterate k
    bool warning = false;                     // differences did not decrease over the last 3 iterates
    std::string note;
};

/// Iterates the discrete mild form on the same noise as solve_heat_em:
///   u^{(k+1)}(t_n, x_i) = (P_{t_n} u_0)(x_i)
///       + lambda sum_{m<n} sum_j Pbar_{(n-1-m) dt}(x_i, V_j) sigma(u^{(k)}(t_m, x_j)) W^m_j
/// where Pbar_tau(x, V) is the average of p_tau(x, .) over V (the identity at lag 0).
/// Iterate 0 is u_0 at every time.
PicardResult solve_heat_picard(const HeatProblem& problem, const NoiseGrid& noise, std::size_t k_max,
                               std::span<const double> snapshot_times);

}  // namespace spde
