#include "spde/error.hpp"
#include "spde/noise.hpp"

#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

using namespace spde;

namespace {

double mean(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / v.size(); }

double variance(const std::vector<double>& v) {
    const double m = mean(v);
    double s = 0.0;
    for (double x : v) s += (x - m) * (x - m);
    return s / (v.size() - 1);
}

}  // namespace

TEST_CASE("philox4x32-10 known-answer vectors") {
    using C = Philox4x32::Counter;
    CHECK(Philox4x32::generate(C{0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
    CHECK(Philox4x32::generate(C{0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
          C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
    CHECK(Philox4x32::generate(C{0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
          C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("grid spec derived quantities") {
    const auto g = GridSpec::make(2.0, 0.5, 8, 10);
    CHECK(g.dx() * g.cells() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.dt() * g.steps() == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(g.nodes() == 9);
    CHECK(g.step_at(0.25) == 5);
    CHECK_THROWS_AS(g.step_at(0.26), ConfigError);
    CHECK_THROWS_AS(GridSpec::make(0.0, 1.0, 4, 4), ConfigError);
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 1, 4), ConfigError);
    CHECK_THROWS_AS(GridSpec::make(1.0, 1.0, 4, 0), ConfigError);
}

TEST_CASE("same seed and replicate give identical increments") {
    const auto g = GridSpec::make(1.0, 1.0, 16, 12);
    const auto a = sample_noise(g, 7, 0);
    const auto b = sample_noise(g, 7, 0);
    CHECK(std::equal(a.increments().begin(), a.increments().end(), b.increments().begin()));
    const auto c = sample_noise(g, 7, 1);
    CHECK_FALSE(std::equal(a.increments().begin(), a.increments().end(), c.increments().begin()));
}

TEST_CASE("stream rows match the materialized grid and any sub-range is reproducible") {
    const auto g = GridSpec::make(1.0, 1.0, 10, 7);
    const auto grid = sample_noise(g, 42, 3);
    const NoiseStream stream(g, 42, 3);
    std::vector<double> row(g.cells());
    for (std::size_t n = 0; n < g.steps(); ++n) {
        stream.fill_row(n, row);
        for (std::size_t i = 0; i < g.cells(); ++i) CHECK(row[i] == grid.at(n, i));
    }
    std::vector<double> all(30);
    std::vector<double> part(7);
    standard_normals(5, 2, 0, all);
    standard_normals(5, 2, 13, part);
    for (std::size_t k = 0; k < part.size(); ++k) CHECK(part[k] == all[13 + k]);
}

TEST_CASE("cell variance equals dt dx") {
    // dt = 0.01, dx = 0.1 over 10^6 cells
    const auto g = GridSpec::make(10.0, 100.0, 100, 10000);
    const auto noise = sample_noise(g, 11, 0);
    std::vector<double> v(noise.increments().begin(), noise.increments().end());
    REQUIRE(v.size() == 1000000);
    const double s2 = variance(v);
    // sd of the sample variance of normals: sigma^2 sqrt(2 / (n - 1))
    const double se = 1e-3 * std::sqrt(2.0 / (v.size() - 1));
    CHECK(std::abs(s2 - 1e-3) <= 3.0 * se);
    CHECK(std::abs(mean(v)) <= 3.0 * std::sqrt(1e-3 / v.size()));
}

TEST_CASE("replicates are uncorrelated") {
    const auto g = GridSpec::make(1.0, 1.0, 100, 1000);
    const auto a = sample_noise(g, 9, 0);
    const auto b = sample_noise(g, 9, 1);
    const auto x = a.increments();
    const auto y = b.increments();
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += x[k] * y[k];
        sxx += x[k] * x[k];
        syy += y[k] * y[k];
    }
    const double rho = sxy / std::sqrt(sxx * syy);
    CHECK(std::abs(rho) <= 3.0 / std::sqrt(static_cast<double>(x.size())));

    // neighbouring cells of one replicate
    double s01 = 0.0;
    for (std::size_t k = 0; k + 1 < x.size(); k += 2) s01 += x[k] * x[k + 1];
    CHECK(std::abs(s01 / (sxx / 2.0)) <= 3.0 / std::sqrt(x.size() / 2.0));
}

TEST_CASE("noise mass has variance L T") {
    const std::size_t reps = 10000;
    auto mass_variance = [&](double T) {
        const auto g = GridSpec::make(1.0, T, 8, 8);
        std::vector<double> m(reps);
        for (std::size_t r = 0; r < reps; ++r) m[r] = noise_mass(sample_noise(g, 1, r));
        return variance(m);
    };
    const double v1 = mass_variance(1.0);
    const double v2 = mass_variance(2.0);
    CHECK(v1 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(v2 / v1 == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("coarsening sums cells and keeps the coarse distribution") {
    const auto fine = GridSpec::make(1.0, 1.0, 40, 400);
    const auto f = sample_noise(fine, 3, 0);
    const auto c = coarsen(f, 2, 2);
    REQUIRE(c.spec().cells() == 20);
    REQUIRE(c.spec().steps() == 200);
    CHECK(c.at(5, 7) == doctest::Approx(f.at(10, 14) + f.at(10, 15) + f.at(11, 14) + f.at(11, 15)).epsilon(1e-14));
    std::vector<double> v(c.increments().begin(), c.increments().end());
    const double target = c.spec().dt() * c.spec().dx();
    CHECK(std::abs(variance(v) - target) <= 3.0 * target * std::sqrt(2.0 / v.size()));
    CHECK(noise_mass(c) == doctest::Approx(noise_mass(f)).epsilon(1e-12));
}

TEST_CASE("control volumes aggregate half cells") {
    const auto g = GridSpec::make(1.0, 1.0, 4, 3);
    const auto h = control_volume_noise_spec(g);
    CHECK(h.cells() == 8);
    CHECK(h.steps() == 3);
    const std::vector<double> half{1, 2, 3, 4, 5, 6, 7, 8};
    std::vector<double> nodes(5);
    aggregate_to_nodes(half, nodes);
    CHECK(nodes == std::vector<double>{1, 5, 9, 13, 8});
}
