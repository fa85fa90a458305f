#include "spde/config.hpp"
#include "spde/error.hpp"
#include "spde/experiments.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdlib>
#include <iostream>
#include <string>

namespace {

enum ExitCode { kOk = 0, kValidation = 1, kCheckFailed = 2, kIo = 3 };

int exit_code_for(spde::ErrorKind kind) {
    return kind == spde::ErrorKind::Io ? kIo : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"spde_lab: stochastic heat and wave equation experiments"};
    app.require_subcommand(1);

    std::string config_path;
    unsigned workers = 0;
    std::uint64_t seed = 0;
    std::string out_dir;

    auto add_common = [&](CLI::App* sub, bool config_required) {
        auto* opt = sub->add_option("--config", config_path, "experiment config file (key = value lines)");
        if (config_required) opt->required();
        sub->add_option("--workers", workers, "worker threads (0: hardware concurrency)");
        sub->add_option("--seed", seed, "seed, overrides SPDE_SEED and the config");
        sub->add_option("--out", out_dir, "output directory, overrides the config");
    };
    auto* simulate = app.add_subcommand("simulate", "single-lambda simulation, writes fields.csv");
    auto* sweep = app.add_subcommand("sweep", "lambda sweep, writes energy.csv with fit and bound checks");
    auto* verify = app.add_subcommand("verify", "kernel and lemma verification suite, writes verify.txt");
    auto* bounds = app.add_subcommand("bounds", "theorem bound tables, writes bounds.csv");
    add_common(simulate, true);
    add_common(sweep, true);
    add_common(verify, false);
    add_common(bounds, true);

    CLI11_PARSE(app, argc, argv);

    try {
        spde::ExperimentConfig cfg;
        if (!config_path.empty()) {
            cfg = spde::load_config(config_path);
        } else {
            cfg = spde::parse_config("");
        }
        spde::RunOptions opts;
        opts.out_dir = out_dir;
        opts.workers = workers;
        for (auto* sub : {simulate, sweep, verify, bounds}) {
            if (sub->parsed() && sub->count("--seed") > 0) opts.seed_flag = seed;
        }
        if (const char* env = std::getenv("SPDE_SEED")) opts.env_seed = std::string(env);

        spde::RunReport rep;
        if (simulate->parsed()) {
            rep = spde::run_simulate(cfg, opts);
        } else if (sweep->parsed()) {
            rep = spde::run_sweep(cfg, opts);
        } else if (verify->parsed()) {
            rep = spde::run_verify(cfg, opts);
        } else {
            rep = spde::run_bounds(cfg, opts);
        }
        for (const auto& line : rep.lines) std::cout << line << '\n';
        for (const auto& f : rep.files) std::cout << "wrote " << f.string() << '\n';
        return rep.passed ? kOk : kCheckFailed;
    } catch (const spde::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
}
