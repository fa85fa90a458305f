#include "spde/noise.hpp"

#include "spde/error.hpp"

#include <cmath>
#include <numbers>

namespace spde {

namespace {

constexpr std::uint32_t kMul0 = 0xD2511F53u;
constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;

inline void mulhilo(std::uint32_t a, std::uint32_t b, std::uint32_t& hi, std::uint32_t& lo) noexcept {
    const std::uint64_t p = static_cast<std::uint64_t>(a) * b;
    hi = static_cast<std::uint32_t>(p >> 32);
    lo = static_cast<std::uint32_t>(p);
}

// (0, 1), never 0 so log() stays finite
inline double to_open_unit(std::uint32_t x) noexcept {
    return (static_cast<double>(x) + 0.5) * 0x1p-32;
}

}  // namespace

Philox4x32::Counter Philox4x32::generate(Counter ctr, Key key) noexcept {
    for (int round = 0; round < 10; ++round) {
        std::uint32_t hi0, lo0, hi1, lo1;
        mulhilo(kMul0, ctr[0], hi0, lo0);
        mulhilo(kMul1, ctr[2], hi1, lo1);
        ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
        key[0] += kWeyl0;
        key[1] += kWeyl1;
    }
    return ctr;
}

void standard_normals(std::uint64_t seed, std::uint64_t replicate, std::uint64_t first, std::span<double> out) {
    const Philox4x32::Key key{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
    const std::uint32_t rep_lo = static_cast<std::uint32_t>(replicate);
    const std::uint32_t rep_hi = static_cast<std::uint32_t>(replicate >> 32);

    std::uint64_t cell = first;
    const std::uint64_t end = first + out.size();
    std::size_t k = 0;
    while (cell < end) {
        const std::uint64_t block = cell / 4;
        const auto bits = Philox4x32::generate(
            {static_cast<std::uint32_t>(block), static_cast<std::uint32_t>(block >> 32), rep_lo, rep_hi}, key);
        // Box-Muller on lanes (0,1) and (2,3)
        std::array<double, 4> z;
        for (int pair = 0; pair < 2; ++pair) {
            const double r = std::sqrt(-2.0 * std::log(to_open_unit(bits[2 * pair])));
            const double theta = 2.0 * std::numbers::pi * to_open_unit(bits[2 * pair + 1]);
            z[2 * pair] = r * std::cos(theta);
            z[2 * pair + 1] = r * std::sin(theta);
        }
        for (std::uint64_t lane = cell % 4; lane < 4 && cell < end; ++lane, ++cell) {
            out[k++] = z[lane];
        }
    }
}

NoiseGrid::NoiseGrid(GridSpec spec, std::uint64_t seed, std::uint64_t replicate, std::vector<double> increments)
    : spec_(spec), seed_(seed), replicate_(replicate), increments_(std::move(increments)) {
    if (increments_.size() != spec_.cells() * spec_.steps()) {
        throw ConfigError("noise: increment array does not match nt x nx");
    }
}

std::span<const double> NoiseGrid::row(std::size_t n) const {
    return std::span<const double>(increments_).subspan(n * spec_.cells(), spec_.cells());
}

void NoiseGrid::fill_row(std::size_t n, std::span<double> out) const {
    const auto r = row(n);
    std::copy(r.begin(), r.end(), out.begin());
}

NoiseStream::NoiseStream(GridSpec spec, std::uint64_t seed, std::uint64_t replicate)
    : spec_(spec), seed_(seed), replicate_(replicate) {}

void NoiseStream::fill_row(std::size_t n, std::span<double> out) const {
    const std::size_t nx = spec_.cells();
    standard_normals(seed_, replicate_, static_cast<std::uint64_t>(n) * nx, out.first(nx));
    const double scale = std::sqrt(spec_.dt() * spec_.dx());
    for (std::size_t i = 0; i < nx; ++i) out[i] *= scale;
}

NoiseGrid sample_noise(const GridSpec& spec, std::uint64_t seed, std::uint64_t replicate) {
    std::vector<double> inc(spec.cells() * spec.steps());
    standard_normals(seed, replicate, 0, inc);
    const double scale = std::sqrt(spec.dt() * spec.dx());
    for (double& w : inc) w *= scale;
    return NoiseGrid(spec, seed, replicate, std::move(inc));
}

double noise_mass(const NoiseGrid& g) {
    double sum = 0.0;
    for (double w : g.increments()) sum += w;
    return sum;
}

GridSpec control_volume_noise_spec(const GridSpec& solver_grid) {
    return GridSpec::make(solver_grid.length(), solver_grid.horizon(), 2 * solver_grid.cells(),
                          solver_grid.steps(), solver_grid.origin());
}

void aggregate_to_nodes(std::span<const double> half_cells, std::span<double> nodes) {
    const std::size_t nx = nodes.size() - 1;
    nodes[0] = half_cells[0];
    for (std::size_t i = 1; i < nx; ++i) nodes[i] = half_cells[2 * i - 1] + half_cells[2 * i];
    nodes[nx] = half_cells[2 * nx - 1];
}

NoiseGrid coarsen(const NoiseGrid& fine, std::size_t space_factor, std::size_t time_factor) {
    const GridSpec& fs = fine.spec();
    if (space_factor == 0 || time_factor == 0 || fs.cells() % space_factor != 0 || fs.steps() % time_factor != 0) {
        throw ConfigError("noise: coarsening factors must divide the grid");
    }
    const auto cs = GridSpec::make(fs.length(), fs.horizon(), fs.cells() / space_factor, fs.steps() / time_factor,
                                   fs.origin());
    std::vector<double> inc(cs.cells() * cs.steps(), 0.0);
    for (std::size_t n = 0; n < fs.steps(); ++n) {
        for (std::size_t i = 0; i < fs.cells(); ++i) {
            inc[(n / time_factor) * cs.cells() + i / space_factor] += fine.at(n, i);
        }
    }
    return NoiseGrid(cs, fine.seed(), fine.replicate(), std::move(inc));
}

}  // namespace spde
