#pragma once

#include "spde/field.hpp"
#include "spde/initial_data.hpp"
#include "spde/noise.hpp"
#include "spde/sigma.hpp"

#include <vector>

namespace spde {

/// w'' = w_xx + lambda sigma(w) xi on the line, w_0 = 0, w'_0 = v_0, simulated on
/// the window grid [-X, X] (grid origin -X, length 2X).
struct WaveProblem {
    GridSpec grid;
    WaveConfig wave;
    SigmaSpec sigma = SigmaSpec::linear(1.0);
    double lambda = 0.0;

    /// Throws ConfigError when dt > dx (CFL) or the window is too narrow.
    void validate() const;
};

/// Leapfrog with r = dt / dx:
///   w^{n+1} = 2 w^n - w^{n-1} + r^2 (w^n_{i+1} - 2 w^n_i + w^n_{i-1}) + dt lambda sigma(w^n_i) W^n_i / |V_i|
/// started from w^1 = dt v_0 + dt^3 v_0'' / 6 (discrete second difference). The
/// noise lives on control_volume_noise_spec(grid) as for the heat solver; the
/// window ends stay at 0, which is exact while X >= support + T.
/// At r = 1 the stencil reproduces d'Alembert exactly on the grid, but the
/// noise term then excites the undamped grid checkerboard; use r < 1 for
/// stochastic runs.
std::vector<Field> solve_wave_em(const WaveProblem& problem, const NoiseSource& noise,
                                 std::span<const double> snapshot_times, const StepObserver& observer = {});

}  // namespace spde
