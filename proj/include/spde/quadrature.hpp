#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace spde {

/// Composite Simpson weights for n_intervals uniform intervals of width h.
/// An odd interval count closes with Simpson's 3/8 rule on the last three.
std::vector<double> simpson_weights(std::size_t n_intervals, double h);

/// Composite trapezoid weights (half weight on both end nodes).
std::vector<double> trapezoid_weights(std::size_t n_intervals, double h);

/// Weighted sum sum_i w_i f_i.
double weighted_sum(std::span<const double> weights, std::span<const double> values);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Gauss-Legendre rule on [a, b]; n in {2, 4, 6, 8, 12, 16, 20, 30}.
QuadratureRule gauss_legendre(int n, double a, double b);

/// Adaptive Gauss-Kronrod (61 point) on [a, b]; infinite limits allowed.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol = 1e-12,
                          unsigned max_depth = 12);

/// Adaptive integral from the smallest to the largest of `points`, split at
/// every point in between. Points need not be sorted.
double integrate_piecewise(const std::function<double(double)>& f, std::span<const double> points,
                           double tol = 1e-12);

}  // namespace spde
