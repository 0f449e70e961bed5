// gdd <mode> --config <path> [--out <path>] [--seed N] [--trials N]

#include <iostream>

#include <CLI11.hpp>

#include "gdd/runner.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"Generalized direction detectors: closed-form PD/PFA and Monte Carlo validation"};
    app.set_version_flag("--version", "gdd 1.0.0");

    std::string mode_text;
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 0;
    std::int64_t trials = 0;
    unsigned workers = 0;

    app.add_option("mode", mode_text, "pfa | threshold | pd | curve | validate | null-dist")->required();
    app.add_option("-c,--config", config_path, "key = value configuration file (defaults if omitted)");
    auto* out_opt = app.add_option("-o,--out", out_path, "output CSV path (stdout if omitted)");
    auto* seed_opt = app.add_option("--seed", seed, "master seed, overrides 'seed'");
    auto* trials_opt = app.add_option("--trials", trials,
                                      "trial count, overrides trials_pd, trials_calibration and null_trials")
                           ->check(CLI::PositiveNumber);
    auto* workers_opt = app.add_option("--workers", workers, "worker threads (0: all cores)");

    CLI11_PARSE(app, argc, argv);

    const auto mode = gdd::parse_mode(mode_text);
    if (!mode) {
        std::cerr << "unknown mode '" << mode_text << "'\n" << app.help();
        return gdd::exit_config;
    }

    gdd::RunConfig cfg;
    try {
        cfg = config_path.empty() ? gdd::parse_config("") : gdd::load_config(config_path);
    } catch (const gdd::ConfigError& e) {
        std::cerr << e.what() << '\n';
        return gdd::exit_config;
    }
    cfg.mode = *mode;
    if (*out_opt)
        cfg.out = out_path;
    if (*seed_opt)
        cfg.scenario.seed = seed;
    if (*trials_opt) {
        cfg.scenario.trials_pd = trials;
        cfg.scenario.trials_calibration = trials;
        cfg.null_trials = trials;
    }
    if (*workers_opt)
        cfg.workers = workers;

    return gdd::run(cfg, std::cout, std::cerr);
}
