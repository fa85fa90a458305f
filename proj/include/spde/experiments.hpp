#pragma once

#include "spde/analysis.hpp"
#include "spde/config.hpp"
#include "spde/montecarlo.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace spde {

struct RunOptions {
    std::filesystem::path out_dir;           // empty: the config's output key
    unsigned workers = 0;                    // 0: hardware concurrency
    std::optional<std::uint64_t> seed_flag;  // --seed
    std::optional<std::string> env_seed;     // value of SPDE_SEED, if set
};

/// Outcome of a subcommand: human-readable lines, files written, and whether
/// every check the subcommand performs passed.
struct RunReport {
    std::vector<std::string> lines;
    std::vector<std::filesystem::path> files;
    bool passed = true;
};

/// Seed precedence: --seed, then SPDE_SEED, then the config. `comment` receives
/// the CSV comment line to write when SPDE_SEED was applied.
std::uint64_t resolve_seed(const ExperimentConfig& cfg, const RunOptions& opts, std::string* comment = nullptr);

/// %.17g
std::string format_real(double v);

/// Simulation of a single lambda: fields.csv (t, x, value) from replicate 0 and,
/// with replicates > 1, max_heights.csv (replicate, max over the whole path).
RunReport run_simulate(const ExperimentConfig& cfg, const RunOptions& opts);

/// Energies for every (t, lambda): Monte-Carlo (method em) or oracle.
EnergyCurve sweep_energies(const ExperimentConfig& cfg, unsigned workers, std::uint64_t seed);

struct SandwichRow {
    double t = 0.0;
    double lambda = 0.0;
    double energy_sq = 0.0;
    double log_lower = 0.0;  // -inf when no lower bound applies
    double log_upper = 0.0;  // +inf when no upper bound applies
    std::string lower_status = "n/a";  // pass | fail | n/a
    std::string upper_status = "n/a";

    bool failed() const { return lower_status == "fail" || upper_status == "fail"; }
};

/// Checks each energy against the closed-form bounds for the configured
/// equation: heat_neumann uses the renewal series (slack 0.95) and the
/// closed-form upper bound, wave the renewal series (slack 0.95) and its closed
/// upper bound, Dirichlet/pam the integrated a-priori moment bound.
std::vector<SandwichRow> sandwich(const ExperimentConfig& cfg, const EnergyCurve& curve);

/// energy.csv plus a summary with the fitted slope per time and the sandwich verdicts.
RunReport run_sweep(const ExperimentConfig& cfg, const RunOptions& opts);

struct VerifyCheck {
    std::string name;
    double measured = 0.0;
    double bound = 0.0;
    bool passed = false;
    std::string relation;  // how measured and bound compare when passing, e.g. "<="

    double margin() const;
};

/// Kernel identities and lemma checks: Neumann mass, semigroup composition,
/// squared-kernel diagonal, positivity, small-time agreement, Dirichlet and
/// Neumann resolvent bounds, Phi lower bound, convolution upper bound.
std::vector<VerifyCheck> verify_checks(const ExperimentConfig& cfg);

/// verify.txt with one line per check and a PASS/FAIL trailer.
RunReport run_verify(const ExperimentConfig& cfg, const RunOptions& opts);

/// BoundSet for every (t, lambda) of the config.
std::vector<BoundSet> bound_table(const ExperimentConfig& cfg);

/// bounds.csv and a printed table.
RunReport run_bounds(const ExperimentConfig& cfg, const RunOptions& opts);

}  // namespace spde
