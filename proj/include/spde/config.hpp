#pragma once

#include "spde/grid.hpp"
#include "spde/heat_solvers.hpp"
#include "spde/initial_data.hpp"
#include "spde/kernels.hpp"
#include "spde/sigma.hpp"
#include "spde/wave_solver.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace spde {

enum class Equation { HeatDirichlet, HeatNeumann, Wave, Pam };
enum class Method { Em, Picard, Oracle };

std::string to_string(Equation e);
std::string to_string(Method m);

/// Parsed experiment description. Built from a flat `key = value` file:
///
///   equation       heat_dirichlet | heat_neumann | wave | pam
///   grid.L         heat domain length (default 1)
///   grid.X         wave window half-width (default support + T)
///   grid.T         horizon (default: largest t in t_list, else 1)
///   grid.nx        cells (default 200 for pam, 64 heat, 400 wave)
///   grid.nt        steps (default: smallest stable count for heat, dt = dx / 2 for wave)
///   diffusion      heat diffusion D (default 1; pam fixes 1/2)
///   sigma.kind     linear | piecewise          sigma.c = slope (default 1)
///   sigma.table    z:s, z:s, ...               sigma.left_slope, sigma.right_slope
///   u0.kind        sine | constant | table     u0.value, u0.table = x:v, ...
///   v0.kind        indicator | bump | table    v0.a (default 1), v0.table
///   lambda_list    comma separated
///   t_list         comma separated snapshot / energy times
///   replicates     Monte-Carlo replicates (default 1)
///   seed           64-bit seed (default 0)
///   method         em | picard | oracle (default em)
///   picard.k_max   Picard iterations (default 10)
///   oracle.steps   wave oracle time steps (default resolves the growth rate)
///   bounds.delta   delta of the closed-form upper bounds (default 1/2)
///   bounds.eps     eps of the (3 + eps) resolvent bound (default 1)
///   verify.beta_list, verify.tau_list   lemma check grids
///   output         output directory (default "out")
///
/// Lines starting with '#' and blank lines are ignored; unknown or repeated keys
/// are errors.
struct ExperimentConfig {
    Equation equation = Equation::HeatDirichlet;
    double L = 1.0;
    std::optional<double> X;
    double T = 1.0;
    std::size_t nx = 64;
    std::size_t nt = 0;
    double diffusion = 1.0;
    SigmaSpec sigma = SigmaSpec::linear(1.0);
    InitialData u0 = InitialData::sine();
    VelocityProfile v0 = VelocityProfile::indicator(1.0);
    std::vector<double> lambdas;
    std::vector<double> times;
    std::size_t replicates = 1;
    std::uint64_t seed = 0;
    Method method = Method::Em;
    std::size_t picard_k_max = 10;
    std::optional<std::size_t> oracle_steps;
    double delta = 0.5;
    double eps = 1.0;
    std::vector<double> verify_betas{10.0, 100.0, 1000.0};
    std::vector<double> verify_taus{0.01, 0.1, 1.0};
    std::string output = "out";
    std::map<std::string, std::string> raw;  // keys as given, for provenance

    bool is_wave() const { return equation == Equation::Wave; }
    Boundary boundary() const { return equation == Equation::HeatNeumann ? Boundary::Neumann : Boundary::Dirichlet; }

    /// Solver grid: [0, L] for heat, [-X, X] for wave.
    GridSpec grid() const;
    WaveConfig wave_config() const;
    HeatProblem heat_problem(double lambda) const;
    WaveProblem wave_problem(double lambda) const;

    /// Cross-field checks (stability/CFL, window width, lambda and time lists);
    /// throws ConfigError naming the violated condition.
    void validate() const;
};

/// Parses the text of a config file. Throws ConfigError.
ExperimentConfig parse_config(const std::string& text);
/// Reads and parses a file. Throws IoError when it cannot be read.
ExperimentConfig load_config(const std::string& path);

/// Comma-separated list of reals.
std::vector<double> parse_list(const std::string& key, const std::string& value);

}  // namespace spde
