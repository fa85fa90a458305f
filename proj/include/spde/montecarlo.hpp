#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace spde {

enum class EnergyMethod { MonteCarlo, Oracle };

std::string to_string(EnergyMethod m);

struct EnergyEntry {
    double t = 0.0;
    double lambda = 0.0;
    double energy = 0.0;
    double std_error = 0.0;
    EnergyMethod method = EnergyMethod::Oracle;
    std::size_t replicates = 0;
};

/// Energies E_t(lambda) = sqrt(E ||u_t||^2) with provenance.
struct EnergyCurve {
    std::vector<EnergyEntry> entries;

    /// Entries with the given t (within 1e-12 relative), in stored order.
    std::vector<EnergyEntry> at_time(double t) const;
};

/// One replicate: fills out[k] with ||u_{t_k}||^2 for the requested times.
using ReplicateRun = std::function<void(std::uint64_t replicate, std::span<double> out)>;

/// Runs replicates 0 .. replicates-1 on `workers` threads and reduces in
/// replicate order, so the result does not depend on the thread count.
/// energy = sqrt(mean), stderr by the delta method: se(mean) / (2 sqrt(mean)).
/// A failing replicate is rethrown with its index.
EnergyCurve estimate_energy_mc(const ReplicateRun& run, std::span<const double> t_list, double lambda,
                               std::size_t replicates, unsigned workers);

/// Runs body(0) .. body(count-1) on up to `workers` threads. Exceptions are
/// collected and the one with the smallest index is rethrown.
void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body);

/// Worker count to use when the caller asks for 0.
unsigned default_workers();

}  // namespace spde
