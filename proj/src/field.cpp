#include "spde/field.hpp"

#include "spde/quadrature.hpp"

namespace spde {

double l2_norm_sq(const GridSpec& spec, std::span<const double> values) {
    const auto w = simpson_weights(spec.cells(), spec.dx());
    double sum = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) sum += w[i] * values[i] * values[i];
    return sum;
}

std::vector<std::size_t> snapshot_steps(const GridSpec& spec, std::span<const double> times) {
    std::vector<std::size_t> steps;
    steps.reserve(times.size());
    for (double t : times) steps.push_back(spec.step_at(t));
    return steps;
}

}  // namespace spde
