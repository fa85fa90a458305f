#include "spde/analysis.hpp"

#include "spde/error.hpp"
#include "spde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace spde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kE = std::numbers::e;
const double kSqrt8 = std::sqrt(8.0);

void check_t(double t, const char* what) {
    if (!(t > 0.0)) throw DomainError(std::string(what) + ": t must be positive");
}

}  // namespace

std::string to_string(Theorem th) {
    switch (th) {
        case Theorem::HeatDirichlet: return "heat_dirichlet";
        case Theorem::HeatNeumann: return "heat_neumann";
        case Theorem::Wave: return "wave";
        case Theorem::PropEnergy: return "prop_energy";
        case Theorem::MomentApriori: return "moment_apriori";
        case Theorem::WaveUpperClosed: return "wave_upper_closed";
    }
    return "?";
}

FitResult fit_excitation_index(std::span<const double> lambdas, std::span<const double> energies) {
    if (lambdas.size() != energies.size()) throw DomainError("fit: lambda and energy lists differ in length");
    FitResult fit;
    std::vector<double> xs;
    std::vector<double> ys;
    for (std::size_t k = 0; k < lambdas.size(); ++k) {
        if (!(energies[k] > 1.0) || !(lambdas[k] > 0.0) || !std::isfinite(energies[k])) {
            fit.dropped_lambdas.push_back(lambdas[k]);
            continue;
        }
        xs.push_back(std::log(lambdas[k]));
        ys.push_back(std::log(std::log(energies[k])));
    }
    fit.used = xs.size();
    if (xs.size() < 4) {
        throw DomainError("fit: only " + std::to_string(xs.size()) + " points with energy > 1, need 4");
    }
    const double n = static_cast<double>(xs.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        mx += xs[k];
        my += ys[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    double syy = 0.0;
    for (std::size_t k = 0; k < xs.size(); ++k) {
        sxx += (xs[k] - mx) * (xs[k] - mx);
        sxy += (xs[k] - mx) * (ys[k] - my);
        syy += (ys[k] - my) * (ys[k] - my);
    }
    if (sxx == 0.0) throw DomainError("fit: all lambda values coincide");
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
    return fit;
}

FitResult fit_excitation_index(const EnergyCurve& curve, double t) {
    std::vector<double> lambdas;
    std::vector<double> energies;
    for (const auto& e : curve.at_time(t)) {
        lambdas.push_back(e.lambda);
        energies.push_back(e.energy);
    }
    return fit_excitation_index(lambdas, energies);
}

BoundSet bound_heat_dirichlet(double t, double lambda, double ell, double lip) {
    check_t(t, "bound_heat_dirichlet");
    BoundSet b;
    b.theorem = Theorem::HeatDirichlet;
    b.t = t;
    b.lambda = lambda;
    b.ell = ell;
    b.lip = lip;
    b.lower_rate = ell * ell * t / 2.0;
    b.lower_power = 2;
    b.upper_rate = 8.0 * std::pow(lip, 4) * t;
    b.upper_power = 4;
    return b;
}

BoundSet bound_prop_energy(double t, double lambda, double ell, const NeumannContext& ctx) {
    check_t(t, "bound_prop_energy");
    BoundSet b;
    b.theorem = Theorem::PropEnergy;
    b.t = t;
    b.lambda = lambda;
    b.ell = ell;
    b.lower_rate = std::pow(ell, 4) * t / (8.0 * kPi * kE);
    b.lower_power = 4;
    if (ctx.u0_inf > 0.0) {
        const double x = std::pow(lambda * ell, 4) * t / (4.0 * kPi * kE);
        b.lower = ctx.u0_inf * ctx.u0_inf * ctx.L * std::expm1(x);
        b.log_lower = std::log(ctx.u0_inf * ctx.u0_inf * ctx.L) + (x > 30.0 ? x : std::log(std::expm1(x)));
    } else {
        b.note = "explicit lower bound needs inf u0 > 0";
    }
    return b;
}

BoundSet bound_heat_neumann(double t, double lambda, double ell, double lip, const NeumannContext& ctx) {
    check_t(t, "bound_heat_neumann");
    if (!(ctx.delta > 0.0 && ctx.delta < 1.0)) throw DomainError("bound_heat_neumann: delta must lie in (0, 1)");
    BoundSet b = bound_prop_energy(t, lambda, ell, ctx);
    b.theorem = Theorem::HeatNeumann;
    b.lip = lip;
    b.eps = ctx.eps;
    b.delta = ctx.delta;
    b.upper_rate = 9.0 * std::pow(lip, 4) * t / 16.0;
    b.upper_power = 4;
    const double scale = (3.0 + ctx.eps) * (3.0 + ctx.eps) / (8.0 * (1.0 - ctx.delta) * (1.0 - ctx.delta));
    const double beta_star = scale * std::pow(lambda * lip, 4);
    if (beta_star >= ctx.threshold) {
        b.log_upper = std::log(ctx.L / ctx.delta * ctx.u0_sup * ctx.u0_sup) + beta_star * t;
        b.upper = std::exp(b.log_upper);
    } else {
        if (!b.note.empty()) b.note += "; ";
        b.note += "upper not asserted: beta* below resolvent threshold";
    }
    return b;
}

double VelocityNorms::a2() const { return 16.0 * std::min(l2_sq, l1 * l1); }

BoundSet bound_wave(double t, double lambda, double ell, double lip, const VelocityNorms& norms, double delta) {
    check_t(t, "bound_wave");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("bound_wave: delta must lie in (0, 1)");
    BoundSet b;
    b.theorem = Theorem::Wave;
    b.t = t;
    b.lambda = lambda;
    b.ell = ell;
    b.lip = lip;
    b.delta = delta;
    b.lower_rate = ell * t / (4.0 * kSqrt8);
    b.lower_power = 1;
    b.upper_rate = lip * t / kSqrt8;
    b.upper_power = 1;
    if (lambda > 0.0 && lip > 0.0) {
        const double e_lam = kE * lambda * lip;
        b.log_upper = std::log(8.0 * norms.a2() * norms.l2_sq / (delta * e_lam * e_lam)) +
                      lambda * lip * t / std::sqrt(2.0 * (1.0 - delta));
        b.upper = std::exp(b.log_upper);
    }
    return b;
}

double bound_moment_apriori(double t, double lambda, double lip, int m, double delta, double u0_sup) {
    log_bound_moment_apriori(t, lambda, lip, m, delta, u0_sup);  // argument checks
    const double md = static_cast<double>(m);
    return std::pow(delta, -md / 2.0) * std::pow(u0_sup, md) *
           std::exp(2.0 * t * md * md * md * std::pow(lambda * lip / (1.0 - delta), 4));
}

double log_bound_moment_apriori(double t, double lambda, double lip, int m, double delta, double u0_sup) {
    if (m < 2) throw DomainError("bound_moment_apriori: m must be >= 2");
    if (!(delta > 0.0 && delta < 1.0)) throw DomainError("bound_moment_apriori: delta must lie in (0, 1)");
    if (t < 0.0) throw DomainError("bound_moment_apriori: t must be >= 0");
    const double md = static_cast<double>(m);
    return -md / 2.0 * std::log(delta) + md * std::log(u0_sup) +
           2.0 * t * md * md * md * std::pow(lambda * lip / (1.0 - delta), 4);
}

double h_function(double r) {
    if (!(r > 0.0)) throw DomainError("h_function: r must be positive");
    return std::min(r / 2.0, r * r / 4.0);
}

ConvolutionBoundResult convolution_bound(const VelocityProfile& v0, double t) {
    check_t(t, "convolution_bound");
    if (!(v0.l2_norm_sq() > 0.0)) throw DomainError("convolution_bound: v0 has zero L2 norm");
    ConvolutionBoundResult r;
    r.t = t;
    r.integral = v0.spread_norm_sq(t);
    r.h = h_function(t);
    r.a1_empirical = r.integral / r.h;
    r.a2 = VelocityNorms::of(v0).a2();
    r.upper_holds = r.integral <= r.a2 * r.h;
    return r;
}

ConvolutionBoundResult convolution_bound(const GridSpec& grid, std::span<const double> v0, double t) {
    if (v0.size() != grid.nodes()) throw DomainError("convolution_bound: sample count does not match the grid");
    std::vector<TablePoint> pts;
    for (std::size_t i = 0; i < v0.size(); ++i) {
        if (v0[i] < 0.0) throw DomainError("convolution_bound: v0 must be non-negative");
        pts.push_back({grid.node(i), v0[i]});
    }
    double l2 = 0.0;
    for (double v : v0) l2 += v * v;
    if (l2 == 0.0) throw DomainError("convolution_bound: v0 has zero L2 norm");
    return convolution_bound(VelocityProfile::table(std::move(pts)), t);
}

double convolution_integral_autocorrelation(const VelocityProfile& v0, double t) {
    const auto kinks = v0.kinks();
    auto autocorr = [&](double r) {
        std::vector<double> pts;
        for (double k : kinks) {
            pts.push_back(k);
            pts.push_back(k - r);
        }
        std::sort(pts.begin(), pts.end());
        auto f = [&](double x) { return v0(x) * v0(x + r); };
        return integrate_piecewise(f, pts, 1e-12);
    };
    // h is even; breakpoints of h sit at differences of kinks
    std::vector<double> pts{0.0, 2.0 * t};
    for (double a : kinks) {
        for (double b : kinks) {
            const double d = std::abs(a - b);
            if (d > 0.0 && d < 2.0 * t) pts.push_back(d);
        }
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    auto g = [&](double r) { return autocorr(r) * (2.0 * t - r); };
    return 2.0 * integrate_piecewise(g, pts, 1e-10);
}

double a1_empirical(const VelocityProfile& v0, std::span<const double> t_grid) {
    if (t_grid.empty()) throw DomainError("a1_empirical: empty time grid");
    double a1 = INFINITY;
    for (double t : t_grid) a1 = std::min(a1, convolution_bound(v0, t).a1_empirical);
    return a1;
}

RenewalSum renewal_series_heat(double t, double lambda, double ell, double eps, double L, int J) {
    if (J < 1) throw DomainError("renewal_series_heat: J must be >= 1");
    check_t(t, "renewal_series_heat");
    const double x = std::pow(lambda * ell, 4) * t / (4.0 * kPi * kE);
    const double pre = eps * eps * L;
    RenewalSum s;
    double term = 1.0;
    double sum = 0.0;
    for (int j = 1; j <= J; ++j) {
        term *= x / j;
        sum += term;
    }
    s.partial = pre * sum;
    s.closed = pre * std::expm1(x);
    return s;
}

RenewalSum renewal_series_wave(double t, double lambda, double ell, double A1, double v0_norm2, int J) {
    if (J < 2) throw DomainError("renewal_series_wave: J must be >= 2");
    check_t(t, "renewal_series_wave");
    const double x = lambda * ell * t / (2.0 * kSqrt8);
    const double pre = 0.5 * A1 * v0_norm2 * h_function(t);
    RenewalSum s;
    double term = x;
    double sum = 0.0;
    for (int j = 2; j <= J; ++j) {
        term *= x / j;
        sum += term;
    }
    s.partial = pre * sum;
    s.closed = pre * (std::expm1(x) - x);
    if (!(ell > 0.0) || lambda < 2.0 * kSqrt8 / (t * ell)) {
        s.asserted = false;
        s.note = "bound not asserted: lambda below 2 sqrt(8) / (t ell)";
    }
    return s;
}

}  // namespace spde
