#include "spde/quadrature.hpp"

#include "spde/error.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace spde {

std::vector<double> simpson_weights(std::size_t n_intervals, double h) {
    if (n_intervals < 2) return trapezoid_weights(n_intervals, h);
    std::vector<double> w(n_intervals + 1, 0.0);
    const std::size_t simpson_end = (n_intervals % 2 == 0) ? n_intervals : n_intervals - 3;
    for (std::size_t i = 0; i + 2 <= simpson_end; i += 2) {
        w[i] += h / 3.0;
        w[i + 1] += 4.0 * h / 3.0;
        w[i + 2] += h / 3.0;
    }
    if (simpson_end != n_intervals) {
        const std::size_t i = simpson_end;
        w[i] += 3.0 * h / 8.0;
        w[i + 1] += 9.0 * h / 8.0;
        w[i + 2] += 9.0 * h / 8.0;
        w[i + 3] += 3.0 * h / 8.0;
    }
    return w;
}

std::vector<double> trapezoid_weights(std::size_t n_intervals, double h) {
    std::vector<double> w(n_intervals + 1, h);
    w.front() = 0.5 * h;
    w.back() = (n_intervals == 0) ? 0.0 : 0.5 * h;
    return w;
}

double weighted_sum(std::span<const double> weights, std::span<const double> values) {
    double s = 0.0;
    for (std::size_t i = 0; i < weights.size(); ++i) s += weights[i] * values[i];
    return s;
}

namespace {

template <unsigned N>
QuadratureRule make_rule(double a, double b) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& x = G::abscissa();
    const auto& w = G::weights();
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    QuadratureRule rule;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k] == 0.0) {
            rule.nodes.push_back(mid);
            rule.weights.push_back(half * w[k]);
            continue;
        }
        rule.nodes.push_back(mid - half * x[k]);
        rule.weights.push_back(half * w[k]);
        rule.nodes.push_back(mid + half * x[k]);
        rule.weights.push_back(half * w[k]);
    }
    return rule;
}

}  // namespace

QuadratureRule gauss_legendre(int n, double a, double b) {
    switch (n) {
        case 2: return make_rule<2>(a, b);
        case 4: return make_rule<4>(a, b);
        case 6: return make_rule<6>(a, b);
        case 8: return make_rule<8>(a, b);
        case 12: return make_rule<12>(a, b);
        case 16: return make_rule<16>(a, b);
        case 20: return make_rule<20>(a, b);
        case 30: return make_rule<30>(a, b);
        default: throw DomainError("gauss_legendre: unsupported order " + std::to_string(n));
    }
}

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double tol,
                          unsigned max_depth) {
    if (a == b) return 0.0;
    return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol);
}

double integrate_piecewise(const std::function<double(double)>& f, std::span<const double> breakpoints, double tol) {
    std::vector<double> pts(breakpoints.begin(), breakpoints.end());
    std::sort(pts.begin(), pts.end());
    // near-coincident points leave slivers where the error estimate is pure roundoff
    const double merge = 1e-12 * (pts.back() - pts.front());
    pts.erase(std::unique(pts.begin(), pts.end(), [&](double a, double b) { return b - a <= merge; }), pts.end());
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < pts.size(); ++k) sum += integrate_adaptive(f, pts[k], pts[k + 1], tol);
    return sum;
}

}  // namespace spde
