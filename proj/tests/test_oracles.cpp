#include "spde/error.hpp"
#include "spde/moment_oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

using namespace spde;

namespace {

constexpr double kPi = std::numbers::pi;

// G'' = F + k G with G(0) = G'(0) = 0 is equivalent to
// g = F + k int_0^t (t - s) g(s) ds via g = G''. Solved by RK4.
double wave_energy_ode(const VelocityProfile& v0, double c, double lambda, double T, std::size_t steps) {
    const double k = 0.5 * (lambda * c) * (lambda * c);
    auto F = [&](double t) { return 0.25 * v0.spread_norm_sq(t); };
    double G = 0.0, dG = 0.0;
    const double h = T / static_cast<double>(steps);
    for (std::size_t n = 0; n < steps; ++n) {
        const double t = n * h;
        auto acc = [&](double tt, double g) { return F(tt) + k * g; };
        const double k1x = dG, k1v = acc(t, G);
        const double k2x = dG + 0.5 * h * k1v, k2v = acc(t + 0.5 * h, G + 0.5 * h * k1x);
        const double k3x = dG + 0.5 * h * k2v, k3v = acc(t + 0.5 * h, G + 0.5 * h * k2x);
        const double k4x = dG + h * k3v, k4v = acc(t + h, G + h * k3x);
        G += h / 6.0 * (k1x + 2 * k2x + 2 * k3x + k4x);
        dG += h / 6.0 * (k1v + 2 * k2v + 2 * k3v + k4v);
    }
    return F(T) + k * G;
}

}  // namespace

TEST_CASE("heat moment oracle without noise is the squared semigroup") {
    const auto g = GridSpec::make(1.0, 0.1, 32, 100);
    const HeatMomentVolterra dir(g, Boundary::Dirichlet, 1.0);
    const auto f = dir.solve(1.0, 0.0, InitialData::sine());
    for (std::size_t n : {0u, 50u, 100u}) {
        CHECK(f.energy_sq(n) == doctest::Approx(0.5 * std::exp(-2.0 * kPi * kPi * g.time(n))).epsilon(1e-6));
        CHECK(f.at(n, 16) == doctest::Approx(std::exp(-2.0 * kPi * kPi * g.time(n))).epsilon(1e-9));
    }
    const HeatMomentVolterra neu(g, Boundary::Neumann, 1.0);
    const auto h = neu.solve(1.0, 0.0, InitialData::constant(1.0));
    CHECK(h.energy_sq(100) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("heat moment oracle converges under refinement") {
    auto energy = [](std::size_t nx, std::size_t nt) {
        const auto g = GridSpec::make(1.0, 0.3, nx, nt);
        return HeatMomentVolterra(g, Boundary::Neumann, 1.0).solve(1.0, 1.0, InitialData::constant(1.0)).energy_sq(nt);
    };
    const double coarse = energy(16, 75);
    const double fine = energy(32, 300);
    CHECK(fine == doctest::Approx(1.50512).epsilon(5e-4));
    CHECK(std::abs(fine - coarse) < 5e-3);
}

TEST_CASE("heat moment oracle rejects unresolved grids and nonlinear sigma") {
    CHECK_THROWS_AS(HeatMomentVolterra(GridSpec::make(1.0, 0.1, 64, 1000), Boundary::Neumann, 1.0), ConfigError);
    const auto g = GridSpec::make(1.0, 0.1, 16, 20);
    const auto s = SigmaSpec::piecewise({{-1.0, -1.0}, {0.0, 0.0}, {1.0, 2.0}}, 1.0, 2.0);
    CHECK_THROWS_AS(solve_heat_moment_volterra(g, Boundary::Neumann, 1.0, s, InitialData::constant(1.0), 1.0),
                    UnsupportedError);
}

TEST_CASE("heat moment oracle dominates the renewal lower bound") {
    const auto g = GridSpec::make(1.0, 0.5, 64, 500);
    const auto f = HeatMomentVolterra(g, Boundary::Neumann, 1.0).solve(1.0, 2.0, InitialData::constant(1.0));
    const double x = 16.0 * 0.5 / (4.0 * kPi * std::numbers::e);
    double partial = 0.0, term = 1.0;
    for (int j = 1; j <= 10; ++j) {
        term *= x / j;
        partial += term;
        CHECK(f.energy_sq(500) >= 0.95 * partial);
    }
}

TEST_CASE("wave energy oracle") {
    const auto v0 = VelocityProfile::indicator(1.0);
    SUBCASE("no noise: a quarter of the spread norm") {
        const auto c = solve_wave_energy_volterra(v0, 1.0, 0.0, 2.0, 400);
        for (std::size_t n = 0; n < c.t.size(); n += 50) {
            CHECK(c.energy_sq[n] == doctest::Approx(0.25 * v0.spread_norm_sq(c.t[n])).epsilon(1e-14));
        }
        // indicator of [-1, 1]: ||W_t||^2 = 8 t^2 - 8 t^3 / 3 for t <= 1
        CHECK(0.25 * v0.spread_norm_sq(0.5) == doctest::Approx(0.25 * (2.0 - 1.0 / 3.0)).epsilon(1e-14));
    }
    SUBCASE("agrees with the equivalent ODE") {
        for (double lambda : {1.0, 20.0, 100.0}) {
            const double T = 1.0;
            const auto c = solve_wave_energy_volterra(v0, 1.0, lambda, T, wave_oracle_steps(1.0, lambda, T));
            const double ref = wave_energy_ode(v0, 1.0, lambda, T, 40000);
            CHECK(c.energy_sq.back() == doctest::Approx(ref).epsilon(2e-4));
            CHECK(wave_energy_sq_at(c, T) == c.energy_sq.back());
        }
    }
    SUBCASE("growth rate lies between the asymptotic constants") {
        const double lambda = 100.0;
        const auto c = solve_wave_energy_volterra(v0, 1.0, lambda, 1.0, wave_oracle_steps(1.0, lambda, 1.0));
        const double rate = std::log(std::sqrt(c.energy_sq.back())) / lambda;
        CHECK(rate >= 1.0 / (4.0 * std::sqrt(8.0)) * 0.9);
        CHECK(rate <= 1.0 / std::sqrt(8.0) * 1.1);
    }
}
