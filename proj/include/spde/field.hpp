#pragma once

#include "spde/grid.hpp"

#include <functional>
#include <span>
#include <vector>

namespace spde {

/// Solution snapshot on the nodes of a grid.
struct Field {
    GridSpec spec;
    double t = 0.0;
    std::vector<double> values;  // spec.nodes() entries
};

/// ||f||^2 over the grid interval by composite Simpson.
double l2_norm_sq(const GridSpec& spec, std::span<const double> values);

/// Called after every time step with the step index n (values are at t_n).
using StepObserver = std::function<void(std::size_t n, std::span<const double> values)>;

/// Step indices for snapshot times, rejecting times that are not grid times.
std::vector<std::size_t> snapshot_steps(const GridSpec& spec, std::span<const double> times);

}  // namespace spde
