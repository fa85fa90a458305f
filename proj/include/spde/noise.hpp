#pragma once

#include "spde/grid.hpp"

#include <array>
#include <cstdint>
#include <span>
#include <vector>

namespace spde {

/// Philox4x32-10 counter-based generator.
/// Stateless: the output is a pure function of (counter, key).
struct Philox4x32 {
    using Counter = std::array<std::uint32_t, 4>;
    using Key = std::array<std::uint32_t, 2>;

    static Counter generate(Counter ctr, Key key) noexcept;
};

/// Read access to a row-major field of white-noise cell integrals.
/// Entry (n, i) is the integral of xi over [t_n, t_{n+1}] x [x_i, x_{i+1}].
class NoiseSource {
public:
    virtual ~NoiseSource() = default;
    virtual const GridSpec& spec() const noexcept = 0;
    virtual std::uint64_t seed() const noexcept = 0;
    virtual std::uint64_t replicate() const noexcept = 0;
    /// Writes the nx increments of time row n into out (out.size() == nx).
    virtual void fill_row(std::size_t n, std::span<double> out) const = 0;
};

/// Materialized noise realization, immutable after creation.
class NoiseGrid final : public NoiseSource {
public:
    NoiseGrid(GridSpec spec, std::uint64_t seed, std::uint64_t replicate, std::vector<double> increments);

    const GridSpec& spec() const noexcept override { return spec_; }
    std::uint64_t seed() const noexcept override { return seed_; }
    std::uint64_t replicate() const noexcept override { return replicate_; }
    void fill_row(std::size_t n, std::span<double> out) const override;

    std::span<const double> row(std::size_t n) const;
    std::span<const double> increments() const noexcept { return increments_; }
    double at(std::size_t n, std::size_t i) const { return increments_[n * spec_.cells() + i]; }

private:
    GridSpec spec_;
    std::uint64_t seed_;
    std::uint64_t replicate_;
    std::vector<double> increments_;
};

/// Same values as sample_noise(spec, seed, replicate) but generated row by row
/// on demand, for runs whose full nt x nx array would not fit comfortably in memory.
class NoiseStream final : public NoiseSource {
public:
    NoiseStream(GridSpec spec, std::uint64_t seed, std::uint64_t replicate);

    const GridSpec& spec() const noexcept override { return spec_; }
    std::uint64_t seed() const noexcept override { return seed_; }
    std::uint64_t replicate() const noexcept override { return replicate_; }
    void fill_row(std::size_t n, std::span<double> out) const override;

private:
    GridSpec spec_;
    std::uint64_t seed_;
    std::uint64_t replicate_;
};

/// Standard normals for the flat cell range [first, first + out.size()) of stream
/// (seed, replicate). Cell c is produced by Philox block c / 4, lane c % 4, so any
/// sub-range can be generated independently of the others.
void standard_normals(std::uint64_t seed, std::uint64_t replicate, std::uint64_t first, std::span<double> out);

/// Noise realization on `spec` with entries Normal(0, dt * dx).
NoiseGrid sample_noise(const GridSpec& spec, std::uint64_t seed, std::uint64_t replicate);

/// Sum of all increments; distributed Normal(0, L * T).
double noise_mass(const NoiseGrid& g);

/// Grid with twice as many cells in space. Node-based solvers on `solver_grid`
/// consume noise on this grid so each node gets the exact integral over its
/// control volume [x_i - dx/2, x_i + dx/2] clipped to the domain.
GridSpec control_volume_noise_spec(const GridSpec& solver_grid);

/// Aggregates a half-cell noise row (2 nx entries) into nx + 1 node control
/// volume integrals. Boundary nodes receive a single half cell.
void aggregate_to_nodes(std::span<const double> half_cells, std::span<double> nodes);

/// Sums blocks of `factor` adjacent cells in space and time.
NoiseGrid coarsen(const NoiseGrid& fine, std::size_t space_factor, std::size_t time_factor);

}  // namespace spde
