#pragma once

#include "spde/grid.hpp"
#include "spde/initial_data.hpp"
#include "spde/montecarlo.hpp"

#include <limits>
#include <span>
#include <string>
#include <vector>

namespace spde {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
    std::size_t used = 0;
    std::vector<double> dropped_lambdas;  // energy <= 1, log log undefined
};

/// Least-squares slope of log log E against log lambda. Points with E <= 1 are
/// dropped and listed; fewer than 4 remaining points throws DomainError.
FitResult fit_excitation_index(std::span<const double> lambdas, std::span<const double> energies);
/// Same on the entries of a curve at one time t.
FitResult fit_excitation_index(const EnergyCurve& curve, double t);

enum class Theorem { HeatDirichlet, HeatNeumann, Wave, PropEnergy, MomentApriori, WaveUpperClosed };

std::string to_string(Theorem th);

/// Evaluated bounds for one theorem at (t, lambda).
/// lower_rate * lambda^lower_power and upper_rate * lambda^upper_power are the
/// leading-order log-energy rates; lower/upper are absolute bounds on |E_t|^2
/// where the statement supplies one (otherwise -inf / +inf), with their natural
/// logarithms in log_lower/log_upper (finite even when the bound overflows).
struct BoundSet {
    Theorem theorem = Theorem::HeatDirichlet;
    double t = 0.0;
    double lambda = 0.0;
    double ell = 0.0;
    double lip = 0.0;
    double eps = 1.0;
    double delta = 0.5;
    int m = 2;
    double lower_rate = 0.0;
    int lower_power = 0;
    double upper_rate = 0.0;
    int upper_power = 0;
    double lower = -std::numeric_limits<double>::infinity();
    double upper = std::numeric_limits<double>::infinity();
    double log_lower = -std::numeric_limits<double>::infinity();
    double log_upper = std::numeric_limits<double>::infinity();
    std::string note;
};

/// Log-energy rates ell^2 t / 2 on lambda^2 and 8 lip^4 t on lambda^4.
BoundSet bound_heat_dirichlet(double t, double lambda, double ell, double lip);

/// Data the Neumann absolute bounds depend on.
struct NeumannContext {
    double L = 1.0;
    double u0_inf = 1.0;  // must be > 0 for the lower bound
    double u0_sup = 1.0;
    double eps = 1.0;     // the (3 + eps) of the resolvent bound
    double delta = 0.5;
    double threshold = 0.0;  // beta above which the resolvent bound holds; see neumann_resolvent_threshold
};

/// Rates ell^4 t / (8 pi e) and 9 lip^4 t / 16 on lambda^4. Absolute bounds:
/// lower = u0_inf^2 L (exp((lambda ell)^4 t / (4 pi e)) - 1),
/// upper = (L / delta) u0_sup^2 exp((3 + eps)^2 (lambda lip)^4 t / (8 (1 - delta)^2)),
/// the latter only when beta* = (3 + eps)^2 (lambda lip)^4 / (8 (1 - delta)^2) >= threshold.
BoundSet bound_heat_neumann(double t, double lambda, double ell, double lip, const NeumannContext& ctx = {});

/// The explicit Neumann lower bound alone (theorem PropEnergy).
BoundSet bound_prop_energy(double t, double lambda, double ell, const NeumannContext& ctx = {});

struct VelocityNorms {
    double l1 = 0.0;
    double l2_sq = 0.0;

    static VelocityNorms of(const VelocityProfile& v0) { return {v0.l1_norm(), v0.l2_norm_sq()}; }
    /// A_2 = 16 min(||v0||_2^2, ||v0||_1^2).
    double a2() const;
};

/// Rates ell t / (4 sqrt 8) and lip t / sqrt 8 on lambda; upper =
/// 8 A_2 ||v0||_2^2 / (delta (e lambda lip)^2) exp(lambda lip t / sqrt(2 (1 - delta))).
BoundSet bound_wave(double t, double lambda, double ell, double lip, const VelocityNorms& norms, double delta = 0.5);

/// delta^{-m/2} u0_sup^m exp(2 t m^3 (lambda lip / (1 - delta))^4).
double bound_moment_apriori(double t, double lambda, double lip, int m, double delta, double u0_sup);

/// Natural log of the same, finite for any lambda.
double log_bound_moment_apriori(double t, double lambda, double lip, int m, double delta, double u0_sup);

/// H(r) = min(r / 2, r^2 / 4), r > 0.
double h_function(double r);

struct ConvolutionBoundResult {
    double t = 0.0;
    double integral = 0.0;  // int_{-t}^t int_{-t}^t (v0 * v0~)(y - z) dy dz
    double h = 0.0;         // H(t)
    double a1_empirical = 0.0;
    double a2 = 0.0;
    bool upper_holds = true;  // integral <= A_2 H(t)
};

/// The double integral equals ||W_t||^2 with W_t = V(. + t) - V(. - t), which is
/// integrated from the exact antiderivative.
ConvolutionBoundResult convolution_bound(const VelocityProfile& v0, double t);
/// v0 given by samples on a grid, interpolated piecewise linearly.
ConvolutionBoundResult convolution_bound(const GridSpec& grid, std::span<const double> v0, double t);

/// The same double integral computed the long way, as int h(r) (2t - |r|)_+ dr
/// with the autocorrelation h(r) = int v0(x) v0(x + r) dx by nested quadrature.
double convolution_integral_autocorrelation(const VelocityProfile& v0, double t);

/// min over the grid of integral(t) / H(t).
double a1_empirical(const VelocityProfile& v0, std::span<const double> t_grid);

struct RenewalSum {
    double partial = 0.0;
    double closed = 0.0;
    bool asserted = true;
    std::string note;
};

/// eps^2 L sum_{j=1}^J [(lambda ell)^4 t / (4 pi e)]^j / j!, closed form eps^2 L (e^x - 1).
RenewalSum renewal_series_heat(double t, double lambda, double ell, double eps, double L, int J);

/// (1/2) A1 v0_norm2 H(t) sum_{j=2}^J x^j / j!, x = lambda ell t / (2 sqrt 8); closed form
/// with e^x - 1 - x. Not asserted for lambda < 2 sqrt 8 / (t ell).
RenewalSum renewal_series_wave(double t, double lambda, double ell, double A1, double v0_norm2, int J);

}  // namespace spde
