// frogsim.cpp — experiment CLI.
//
//   frogsim <experiment> --config <path> [--seed N] [--replicas N] [--out DIR]
//
// Exit codes: 0 success, 2 validation error, 1 runtime failure.
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "frog/harness.hpp"

namespace {

int run(const std::string& experiment, const std::string& config_path,
        std::optional<std::uint64_t> seed, std::optional<int> replicas,
        const std::string& out_dir, int threads) {
    std::ifstream in(config_path);
    if (!in) {
        std::cerr << "frogsim: cannot open config " << config_path << "\n";
        return 2;
    }
    std::stringstream buf;
    buf << in.rdbuf();

    frog::cli::ExperimentConfig cfg;
    try {
        cfg = frog::cli::ExperimentConfig::from_json_text(buf.str());
        if (cfg.experiment != experiment)
            throw std::invalid_argument("config experiment '" + cfg.experiment +
                                        "' does not match subcommand '" +
                                        experiment + "'");
        if (seed) cfg.seed = *seed;
        if (replicas) cfg.replicas = *replicas;
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        std::cerr << "frogsim: " << e.what() << "\n";
        return 2;
    }

    try {
        const auto result = frog::cli::run_experiment(cfg, out_dir, threads);
        for (const auto& f : result.files)
            std::cout << (result.out_dir / f).string() << "\n";
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "frogsim: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "frogsim: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"frog-model experiment runner"};
    app.require_subcommand(1);

    const std::vector<std::string> experiments = {
        "simulate", "mu", "shape", "flat-edge", "full-diamond", "srw-validate", "ct"};

    struct Args {
        std::string config;
        std::optional<std::uint64_t> seed;
        std::optional<int> replicas;
        std::string out = "run-out";
        int threads = 0;
    };
    std::vector<Args> args(experiments.size());

    for (std::size_t i = 0; i < experiments.size(); ++i) {
        auto* sub = app.add_subcommand(experiments[i],
                                       "run the " + experiments[i] + " experiment");
        sub->add_option("--config", args[i].config, "JSON config path")->required();
        sub->add_option("--seed", args[i].seed, "override config seed");
        sub->add_option("--replicas", args[i].replicas, "override config replicas");
        sub->add_option("--out", args[i].out, "output directory");
        sub->add_option("--threads", args[i].threads, "worker threads (0 = auto)");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    for (std::size_t i = 0; i < experiments.size(); ++i) {
        if (app.get_subcommand(experiments[i])->parsed())
            return run(experiments[i], args[i].config, args[i].seed,
                       args[i].replicas, args[i].out, args[i].threads);
    }
    return 2;
}
