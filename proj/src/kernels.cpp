#include "spde/kernels.hpp"

#include "spde/error.hpp"
#include "spde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace spde {

namespace {

constexpr double kPi = std::numbers::pi;

// int_{-infty}^z Gamma_tau
double gaussian_cdf(double tau, double z) {
    return 0.5 * std::erfc(-z / std::sqrt(4.0 * tau));
}

void check_time(double t, const char* what) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw DomainError(std::string(what) + ": time must be positive, got " + std::to_string(t));
    }
}

void check_position(const KernelParams& p, double x, const char* what) {
    const double slack = 1e-12 * p.L;
    if (!(x >= -slack && x <= p.L + slack)) {
        throw DomainError(std::string(what) + ": position " + std::to_string(x) + " outside [0, L]");
    }
}

double sign_of(Boundary b) { return b == Boundary::Neumann ? 1.0 : -1.0; }

// Series evaluated at diffusive time tau = D t.
double images_value(const KernelParams& p, double tau, double x, double y) {
    const double s = sign_of(p.boundary);
    double sum = 0.0;
    for (int n = -p.images; n <= p.images; ++n) {
        const double shift = 2.0 * n * p.L;
        sum += heat_fundamental(tau, x - y - shift) + s * heat_fundamental(tau, x + y - shift);
    }
    return sum;
}

double eigen_value(const KernelParams& p, double tau, double x, double y) {
    const double k = kPi / p.L;
    double sum = (p.boundary == Boundary::Neumann) ? 1.0 / p.L : 0.0;
    for (int n = 1; n <= p.modes; ++n) {
        const double decay = std::exp(-k * k * n * n * tau);
        if (decay == 0.0) break;
        const double modes = (p.boundary == Boundary::Neumann) ? std::cos(n * k * x) * std::cos(n * k * y)
                                                                 : std::sin(n * k * x) * std::sin(n * k * y);
        sum += (2.0 / p.L) * modes * decay;
    }
    return sum;
}

Representation resolve(const KernelParams& p, double tau) {
    if (p.representation != Representation::Auto) return p.representation;
    const KernelParams unit{p.L, p.boundary, p.modes, p.images, p.representation, 1.0};
    return eigen_tail_bound(unit, tau) <= image_tail_bound(unit, tau) ? Representation::Eigen
                                                                        : Representation::Images;
}

double tail_at(const KernelParams& p, Representation r, double tau) {
    const KernelParams unit{p.L, p.boundary, p.modes, p.images, p.representation, 1.0};
    return r == Representation::Eigen ? eigen_tail_bound(unit, tau) : image_tail_bound(unit, tau);
}

}  // namespace

std::string to_string(Boundary b) { return b == Boundary::Neumann ? "neumann" : "dirichlet"; }

std::string to_string(Representation r) {
    switch (r) {
        case Representation::Auto: return "auto";
        case Representation::Eigen: return "eigen";
        case Representation::Images: return "images";
    }
    return "?";
}

void KernelParams::validate() const {
    if (!(L > 0.0)) throw DomainError("kernel: L must be positive");
    if (modes < 1 || images < 1) throw DomainError("kernel: truncation must be >= 1");
    if (!(diffusion > 0.0)) throw DomainError("kernel: diffusion must be positive");
}

double heat_fundamental(double t, double z) {
    check_time(t, "heat_fundamental");
    return std::exp(-z * z / (4.0 * t)) / std::sqrt(4.0 * kPi * t);
}

double eigen_tail_bound(const KernelParams& p, double t) {
    const double tau = p.diffusion * t;
    const double k2 = (kPi / p.L) * (kPi / p.L);
    const double n1 = p.modes + 1.0;
    const double ratio = std::exp(-(2.0 * p.modes + 3.0) * k2 * tau);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    return (2.0 / p.L) * std::exp(-n1 * n1 * k2 * tau) / (1.0 - ratio);
}

double image_tail_bound(const KernelParams& p, double t) {
    const double tau = p.diffusion * t;
    // omitted terms have |argument| >= 2 (|n| - 1) L >= 2 N L
    const double ratio = std::exp(-(2.0 * p.images + 1.0) * p.L * p.L / tau);
    if (ratio >= 1.0) return std::numeric_limits<double>::infinity();
    const double z = 2.0 * p.images * p.L;
    return 4.0 * std::exp(-z * z / (4.0 * tau)) / std::sqrt(4.0 * kPi * tau) / (1.0 - ratio);
}

Representation choose_representation(const KernelParams& p, double t) { return resolve(p, p.diffusion * t); }

KernelValue heat_kernel(const KernelParams& p, double t, double x, double y) {
    p.validate();
    check_time(t, "heat_kernel");
    check_position(p, x, "heat_kernel");
    check_position(p, y, "heat_kernel");
    const double tau = p.diffusion * t;
    const Representation r = resolve(p, tau);
    KernelValue kv;
    kv.t = t;
    kv.x = x;
    kv.y = y;
    kv.used = r;
    kv.value = (r == Representation::Eigen) ? eigen_value(p, tau, x, y) : images_value(p, tau, x, y);
    kv.truncation_error_bound = tail_at(p, r, tau);
    return kv;
}

double EigenFunction::operator()(double x) const {
    return std::sqrt(2.0 / L) * std::sin(n * kPi * x / L);
}

Eigenpair eigenpair(const KernelParams& p, int n) {
    p.validate();
    if (n < 1) throw DomainError("eigenpair: n must be >= 1, got " + std::to_string(n));
    if (p.boundary != Boundary::Dirichlet) throw UnsupportedError("eigenpair: Dirichlet Laplacian only");
    const double k = n * kPi / p.L;
    return {k * k, EigenFunction{p.L, n}};
}

double heat_kernel_integral(const KernelParams& p, double t, double x, double a, double b) {
    p.validate();
    check_time(t, "heat_kernel_integral");
    const double tau = p.diffusion * t;
    const double s = sign_of(p.boundary);
    if (resolve(p, tau) == Representation::Images) {
        double sum = 0.0;
        for (int n = -p.images; n <= p.images; ++n) {
            const double shift = 2.0 * n * p.L;
            sum += gaussian_cdf(tau, x - a - shift) - gaussian_cdf(tau, x - b - shift);
            sum += s * (gaussian_cdf(tau, x + b - shift) - gaussian_cdf(tau, x + a - shift));
        }
        return sum;
    }
    const double k = kPi / p.L;
    double sum = (p.boundary == Boundary::Neumann) ? (b - a) / p.L : 0.0;
    for (int n = 1; n <= p.modes; ++n) {
        const double decay = std::exp(-k * k * n * n * tau);
        if (decay == 0.0) break;
        const double kn = n * k;
        const double term = (p.boundary == Boundary::Neumann)
                                ? std::cos(kn * x) * (std::sin(kn * b) - std::sin(kn * a)) / kn
                                : std::sin(kn * x) * (std::cos(kn * a) - std::cos(kn * b)) / kn;
        sum += (2.0 / p.L) * term * decay;
    }
    return sum;
}

KernelProfile kernel_profile(const KernelParams& p, double t, std::size_t nx) {
    p.validate();
    check_time(t, "kernel_profile");
    const double tau = p.diffusion * t;
    const double dx = p.L / static_cast<double>(nx);
    const int n = static_cast<int>(nx);
    KernelProfile prof;
    prof.offset = -n;
    prof.sign = sign_of(p.boundary);
    prof.values.assign(static_cast<std::size_t>(3 * n + 1), 0.0);
    const Representation r = resolve(p, tau);
    prof.truncation_error_bound = 2.0 * tail_at(p, r, tau);
    if (r == Representation::Images) {
        for (int m = -n; m <= 2 * n; ++m) {
            double sum = 0.0;
            for (int img = -p.images; img <= p.images; ++img) {
                const double z = m * dx - 2.0 * img * p.L;
                const double e = z * z / (4.0 * tau);
                if (e < 745.0) sum += std::exp(-e);
            }
            prof.values[static_cast<std::size_t>(m + n)] = sum / std::sqrt(4.0 * kPi * tau);
        }
        return prof;
    }
    const double k = kPi / p.L;
    std::vector<double> decay;
    for (int mode = 1; mode <= p.modes; ++mode) {
        const double d = std::exp(-k * k * mode * mode * tau);
        if (d == 0.0) break;
        decay.push_back(d);
    }
    const double base = (p.boundary == Boundary::Neumann) ? 0.5 / p.L : 0.0;
    for (int m = -n; m <= 2 * n; ++m) {
        double sum = base;
        for (std::size_t mode = 1; mode <= decay.size(); ++mode) {
            sum += std::cos(static_cast<double>(mode) * k * m * dx) * decay[mode - 1] / p.L;
        }
        prof.values[static_cast<std::size_t>(m + n)] = sum;
    }
    return prof;
}

namespace {

// Discrete cosine (Neumann) or sine (Dirichlet) expansion of nodal data,
// each mode damped by exp(-mu_n tau). Exact for trigonometric data of degree < nx.
std::vector<double> spectral_semigroup(const KernelParams& p, double tau, std::span<const double> h) {
    const std::size_t nx = h.size() - 1;
    const double k = kPi / static_cast<double>(nx);
    const auto w = trapezoid_weights(nx, 1.0);
    std::vector<double> out(h.size(), 0.0);
    const bool neumann = p.boundary == Boundary::Neumann;
    const std::size_t first = neumann ? 0 : 1;
    const std::size_t last = neumann ? nx : nx - 1;
    for (std::size_t mode = first; mode <= last; ++mode) {
        auto basis = [&](std::size_t i) {
            const double arg = static_cast<double>(mode * i) * k;
            return neumann ? std::cos(arg) : std::sin(arg);
        };
        double coef = 0.0;
        double norm = 0.0;
        for (std::size_t i = 0; i <= nx; ++i) {
            const double b = basis(i);
            coef += w[i] * h[i] * b;
            norm += w[i] * b * b;
        }
        if (norm == 0.0) continue;
        const double mu = (static_cast<double>(mode) * kPi / p.L) * (static_cast<double>(mode) * kPi / p.L);
        const double factor = coef / norm * std::exp(-mu * tau);
        for (std::size_t i = 0; i <= nx; ++i) out[i] += factor * basis(i);
    }
    return out;
}

}  // namespace

std::vector<double> semigroup_apply(const KernelParams& p, double t, std::span<const double> h) {
    p.validate();
    if (t < 0.0) throw DomainError("semigroup_apply: t must be >= 0");
    if (h.size() < 3) throw DomainError("semigroup_apply: need at least 2 cells");
    if (t == 0.0) return {h.begin(), h.end()};
    const std::size_t nx = h.size() - 1;
    const double dx = p.L / static_cast<double>(nx);
    const double tau = p.diffusion * t;
    if (std::sqrt(2.0 * tau) < 3.0 * dx) return spectral_semigroup(p, tau, h);

    const KernelProfile prof = kernel_profile(p, t, nx);
    const auto w = simpson_weights(nx, dx);
    std::vector<double> out(h.size(), 0.0);
    const int n = static_cast<int>(nx);
    for (int i = 0; i <= n; ++i) {
        double sum = 0.0;
        for (int j = 0; j <= n; ++j) sum += w[static_cast<std::size_t>(j)] * prof(i, j) * h[static_cast<std::size_t>(j)];
        out[static_cast<std::size_t>(i)] = sum;
    }
    return out;
}

double diagonal_double_time(const KernelParams& p, double s, double y) {
    check_time(s, "diagonal_double_time");
    return heat_kernel(p, 2.0 * s, y, y).value;
}

double kernel_trace(const KernelParams& p, double t) {
    p.validate();
    check_time(t, "kernel_trace");
    const double tau = p.diffusion * t;
    const double s = sign_of(p.boundary);
    if (resolve(p, tau) == Representation::Images) {
        // int_0^L Gamma(2x - 2nL) dx summed over |n| <= N telescopes to a single cdf difference
        double sum = 0.0;
        for (int n = -p.images; n <= p.images; ++n) sum += p.L * heat_fundamental(tau, 2.0 * n * p.L);
        const double reflected =
            0.5 * (gaussian_cdf(tau, 2.0 * p.L + 2.0 * p.images * p.L) - gaussian_cdf(tau, -2.0 * p.images * p.L));
        return sum + s * reflected;
    }
    const double k = kPi / p.L;
    double sum = (p.boundary == Boundary::Neumann) ? 1.0 : 0.0;
    for (int n = 1; n <= p.modes; ++n) {
        const double d = std::exp(-k * k * n * n * tau);
        if (d == 0.0) break;
        sum += d;
    }
    return sum;
}

double phi_integral(const KernelParams& p, double tau) {
    p.validate();
    if (tau < 0.0) throw DomainError("phi_integral: tau must be >= 0");
    if (tau == 0.0) return 0.0;
    auto integrand = [&](double v) {
        if (v == 0.0) {
            // trace(2 v^2) * 2 v -> 2 L / sqrt(8 pi D)
            return 2.0 * p.L / std::sqrt(8.0 * kPi * p.diffusion);
        }
        return kernel_trace(p, 2.0 * v * v) * 2.0 * v;
    };
    return integrate_adaptive(integrand, 0.0, std::sqrt(tau), 1e-13);
}

double weighted_diagonal_integral(const KernelParams& p, double beta, double t, double x) {
    p.validate();
    if (t <= 0.0) return 0.0;
    auto integrand = [&](double v) {
        if (v == 0.0) {
            const double s = sign_of(p.boundary);
            const bool at_wall = x == 0.0 || x == p.L;
            return 2.0 * (1.0 + (at_wall ? s : 0.0)) / std::sqrt(8.0 * kPi * p.diffusion);
        }
        const double s = v * v;
        return std::exp(-beta * s) * heat_kernel(p, 2.0 * s, x, x).value * 2.0 * v;
    };
    // the integrand varies on the scale v ~ x / sqrt(D) near the walls and 1 / sqrt(beta) overall
    std::vector<double> pts{0.0, std::sqrt(t)};
    for (double scale : {1.0 / std::sqrt(beta), std::min(x, p.L - x) / std::sqrt(p.diffusion)}) {
        for (double f : {0.5, 1.0, 2.0, 4.0}) {
            if (f * scale > 0.0 && f * scale < std::sqrt(t)) pts.push_back(f * scale);
        }
    }
    return integrate_piecewise(integrand, pts, 1e-10);
}

double laplace_diagonal(const KernelParams& p, double beta, double x) {
    p.validate();
    if (!(beta > 0.0)) throw DomainError("laplace_diagonal: beta must be positive");
    const double k = std::sqrt(beta / (2.0 * p.diffusion));
    const double q = std::exp(-2.0 * p.L * k);
    const double centred = (1.0 + q) / (1.0 - q);
    const double reflected = (std::exp(-2.0 * x * k) + std::exp(-2.0 * (p.L - x) * k)) / (1.0 - q);
    return (centred + sign_of(p.boundary) * reflected) / std::sqrt(8.0 * p.diffusion * beta);
}

double dirichlet_resolvent_series(double L, double beta) {
    const double r = std::sqrt(beta);
    return (L / std::tanh(L * r) / (2.0 * r) - 1.0 / (2.0 * beta)) / L;
}

double neumann_resolvent_threshold(const KernelParams& p, double eps) {
    KernelParams q = p;
    q.boundary = Boundary::Neumann;
    // the supremum over x sits on the walls
    auto scaled = [&](double beta) { return std::sqrt(8.0 * beta) * laplace_diagonal(q, beta, 0.0); };
    const double target = 3.0 + eps;
    double lo = 1e-12;
    double hi = 1.0;
    while (scaled(hi) > target) hi *= 2.0;
    if (scaled(lo) <= target) return lo;
    for (int it = 0; it < 200; ++it) {
        const double mid = std::sqrt(lo * hi);
        (scaled(mid) > target ? lo : hi) = mid;
    }
    return hi;
}

ResolventCheck resolvent_check(const KernelParams& p, double beta, double t, double eps, std::size_t x_points) {
    p.validate();
    if (!(beta > 0.0)) throw DomainError("resolvent_check: beta must be positive");
    if (x_points < 2) throw DomainError("resolvent_check: need at least 2 points");
    ResolventCheck rc;
    rc.boundary = p.boundary;
    rc.beta = beta;
    const double dx = p.L / static_cast<double>(x_points - 1);
    if (p.boundary == Boundary::Dirichlet) {
        check_time(t, "resolvent_check");
        rc.bound = 1.0 / (2.0 * std::sqrt(beta));
        for (std::size_t i = 1; i + 1 < x_points; ++i) {
            rc.lhs = std::max(rc.lhs, weighted_diagonal_integral(p, beta, t, static_cast<double>(i) * dx));
        }
        return rc;
    }
    rc.bound = (3.0 + eps) / std::sqrt(8.0 * beta);
    for (std::size_t i = 0; i < x_points; ++i) {
        rc.lhs = std::max(rc.lhs, laplace_diagonal(p, beta, static_cast<double>(i) * dx));
    }
    rc.threshold = neumann_resolvent_threshold(p, eps);
    if (beta < rc.threshold) {
        rc.asserted = false;
        rc.note = "bound not asserted: beta below computed threshold " + std::to_string(rc.threshold);
    }
    return rc;
}

}  // namespace spde
