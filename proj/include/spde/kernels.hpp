#pragma once

#include "spde/grid.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace spde {

enum class Boundary { Dirichlet, Neumann };

/// Which series evaluates p_t: the eigenfunction expansion converges fast for
/// large t, the method-of-images sum for small t.
enum class Representation { Auto, Eigen, Images };

std::string to_string(Boundary b);
std::string to_string(Representation r);

/// Heat kernel of d/dt = D d^2/dx^2 on [0, L] with Dirichlet or Neumann walls.
struct KernelParams {
    double L = 1.0;
    Boundary boundary = Boundary::Dirichlet;
    int modes = 50;   // eigenmodes retained
    int images = 20;  // image terms |n| <= images
    Representation representation = Representation::Auto;
    double diffusion = 1.0;  // p^D_t = p_{D t}

    void validate() const;
};

struct KernelValue {
    double t = 0.0;
    double x = 0.0;
    double y = 0.0;
    double value = 0.0;
    double truncation_error_bound = 0.0;
    Representation used = Representation::Auto;
};

/// Gamma_t(z) = (4 pi t)^{-1/2} exp(-z^2 / 4t). Throws DomainError for t <= 0.
double heat_fundamental(double t, double z);

/// Pointwise kernel p_t(x, y) with a rigorous bound on the truncated tail.
KernelValue heat_kernel(const KernelParams& p, double t, double x, double y);

/// Tail bounds of the two truncated series at time t (already scaled by D).
double eigen_tail_bound(const KernelParams& p, double t);
double image_tail_bound(const KernelParams& p, double t);
/// Resolves Representation::Auto by comparing the two tail bounds.
Representation choose_representation(const KernelParams& p, double t);

/// Normalized Dirichlet eigenfunction sqrt(2/L) sin(n pi x / L).
struct EigenFunction {
    double L;
    int n;
    double operator()(double x) const;
};

struct Eigenpair {
    double mu;
    EigenFunction phi;
};

/// mu_n = (n pi / L)^2 and phi_n for the Dirichlet Laplacian; n >= 1.
Eigenpair eigenpair(const KernelParams& p, int n);

/// int_a^b p_t(x, y) dy in closed form (erf differences or integrated modes).
double heat_kernel_integral(const KernelParams& p, double t, double x, double a, double b);

/// On the uniform grid x_i = i dx the kernel separates as
/// p_t(x_i, x_j) = F(i - j) + sign * F(i + j), sign = +1 (Neumann) or -1 (Dirichlet).
struct KernelProfile {
    int offset = 0;  // index of F(offset) in values
    double sign = 1.0;
    std::vector<double> values;
    double truncation_error_bound = 0.0;

    double F(int m) const { return values[static_cast<std::size_t>(m - offset)]; }
    double operator()(int i, int j) const { return F(i - j) + sign * F(i + j); }
};

/// Profile covering every (i, j) pair of a grid with nx cells of width L / nx.
KernelProfile kernel_profile(const KernelParams& p, double t, std::size_t nx);

/// (P_t h)(x_i) for h sampled on the nodes of [0, L] (h.size() - 1 cells).
/// t = 0 returns h. Resolved kernels use Simpson quadrature of p_t(x_i, .) h;
/// kernels narrower than three cells switch to the discrete sine/cosine
/// expansion of h, which is exact for trigonometric data.
std::vector<double> semigroup_apply(const KernelParams& p, double t, std::span<const double> h);

/// p_{2s}(y, y) = int_0^L p_s(y, z)^2 dz.
double diagonal_double_time(const KernelParams& p, double s, double y);

/// int_0^L p_t(x, x) dx.
double kernel_trace(const KernelParams& p, double t);

/// Phi(tau) = int_0^tau ds int_0^L p_{2s}(x, x) dx. The s^{-1/2} singularity is
/// removed analytically with s = v^2 before adaptive Gauss-Kronrod quadrature.
double phi_integral(const KernelParams& p, double tau);

/// int_0^t e^{-beta s} p_{2s}(x, x) ds by the same substitution.
double weighted_diagonal_integral(const KernelParams& p, double beta, double t, double x);

/// int_0^infty e^{-beta s} p_{2s}(x, x) ds in closed form from the image sum,
/// using int_0^infty e^{-beta s} Gamma_{2Ds}(a) ds = exp(-|a| sqrt(beta / 2D)) / sqrt(8 D beta).
double laplace_diagonal(const KernelParams& p, double beta, double x);

struct ResolventCheck {
    Boundary boundary = Boundary::Dirichlet;
    double beta = 0.0;
    double lhs = 0.0;
    double bound = 0.0;
    double threshold = 0.0;  // Neumann: computed beta above which the bound holds
    bool asserted = true;
    std::string note;

    double margin() const { return bound - lhs; }
};

/// Dirichlet: lhs = sup_x int_0^t e^{-beta (t-s)} int_0^L p_{t-s}(x, y)^2 dy ds,
/// bound = 1 / (2 sqrt(beta)).
/// Neumann: lhs = sup_{t, x} int_0^t e^{-beta s} p_{2s}(x, x) ds (the t -> infinity
/// Laplace transform), bound = (3 + eps) / sqrt(8 beta); not asserted when beta
/// is below the computed threshold.
/// The supremum over x is taken on x_points uniformly spaced nodes.
ResolventCheck resolvent_check(const KernelParams& p, double beta, double t, double eps = 1.0,
                               std::size_t x_points = 201);

/// Smallest beta with sup_x sqrt(8 beta) * laplace_diagonal(beta, x) <= 3 + eps.
double neumann_resolvent_threshold(const KernelParams& p, double eps);

/// (1/L) sum_{n >= 1} 1 / (beta + (n pi / L)^2) in closed form:
/// (1/L) [ L coth(L sqrt(beta)) / (2 sqrt(beta)) - 1 / (2 beta) ].
double dirichlet_resolvent_series(double L, double beta);

}  // namespace spde
