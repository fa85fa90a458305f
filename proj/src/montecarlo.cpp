#include "spde/montecarlo.hpp"

#include "spde/error.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace spde {

std::string to_string(EnergyMethod m) { return m == EnergyMethod::MonteCarlo ? "mc" : "oracle"; }

std::vector<EnergyEntry> EnergyCurve::at_time(double t) const {
    std::vector<EnergyEntry> out;
    for (const auto& e : entries) {
        if (std::abs(e.t - t) <= 1e-12 * std::max(1.0, std::abs(t))) out.push_back(e);
    }
    return out;
}

unsigned default_workers() { return std::max(1u, std::thread::hardware_concurrency()); }

void parallel_for(std::size_t count, unsigned workers, const std::function<void(std::size_t)>& body) {
    if (workers == 0) workers = default_workers();
    workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(count, 1)));
    std::atomic<std::size_t> next{0};
    std::mutex mu;
    std::size_t failed_index = count;
    std::exception_ptr failure;
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                body(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (i < failed_index) {
                    failed_index = i;
                    failure = std::current_exception();
                }
            }
        }
    };
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    if (failure) std::rethrow_exception(failure);
}

EnergyCurve estimate_energy_mc(const ReplicateRun& run, std::span<const double> t_list, double lambda,
                               std::size_t replicates, unsigned workers) {
    if (replicates < 2) throw ConfigError("monte carlo: need at least 2 replicates");
    const std::size_t nt = t_list.size();
    std::vector<double> norms(replicates * nt);
    parallel_for(replicates, workers, [&](std::size_t r) {
        try {
            run(r, std::span<double>(norms).subspan(r * nt, nt));
        } catch (const Error& e) {
            throw Error(e.kind(), "replicate " + std::to_string(r) + ": " + e.what());
        } catch (const std::exception& e) {
            throw DomainError("replicate " + std::to_string(r) + ": " + e.what());
        }
    });

    EnergyCurve curve;
    for (std::size_t k = 0; k < nt; ++k) {
        double sum = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) sum += norms[r * nt + k];
        const double n = static_cast<double>(replicates);
        const double mean = sum / n;
        double ss = 0.0;
        for (std::size_t r = 0; r < replicates; ++r) {
            const double d = norms[r * nt + k] - mean;
            ss += d * d;
        }
        const double se_mean = std::sqrt(ss / (n - 1.0) / n);
        EnergyEntry e;
        e.t = t_list[k];
        e.lambda = lambda;
        e.energy = std::sqrt(mean);
        e.std_error = mean > 0.0 ? se_mean / (2.0 * std::sqrt(mean)) : 0.0;
        e.method = EnergyMethod::MonteCarlo;
        e.replicates = replicates;
        curve.entries.push_back(e);
    }
    return curve;
}

}  // namespace spde
