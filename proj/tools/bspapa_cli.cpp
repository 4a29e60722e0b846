// Command-line front end: experiment runs, paper presets, the special-case
// equivalence suite and the multiplication-count calculator.

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "bspapa/config.hpp"
#include "bspapa/equivalence.hpp"
#include "bspapa/experiment.hpp"
#include "bspapa/filter.hpp"
#include "bspapa/regressor.hpp"

namespace {

int execute(bspapa::ExperimentConfig cfg, const std::optional<std::uint64_t>& seed,
            const std::optional<std::string>& out, const std::optional<std::size_t>& decimation) {
    if (seed) cfg.scenario.seed = *seed;
    if (out) cfg.output_path = *out;
    if (decimation) cfg.trace_decimation = *decimation;

    const auto result = bspapa::run_experiment(cfg);
    bspapa::write_traces_csv(result.traces, result.summary, cfg.output_path, cfg.trace_decimation);

    std::cout << "wrote " << cfg.output_path.string() << " and " << bspapa::summary_path_for(cfg.output_path).string()
              << '\n';
    for (const auto& entry : result.summary.entries) {
        std::cout << "  " << entry.label;
        for (const auto& seg : entry.segments) {
            std::cout << "  [seg " << seg.segment << ": t(-15dB)=";
            if (seg.time_to_threshold)
                std::cout << *seg.time_to_threshold;
            else
                std::cout << "never";
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.2f", seg.steady_state_db);
            std::cout << ", steady=" << buf << " dB]";
        }
        std::cout << "  mults/step=" << entry.mults_per_step << '\n';
        if (entry.failure) std::cerr << "error: " << entry.label << ": " << *entry.failure << '\n';
    }
    return result.summary.ok() ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Block-sparse proportionate affine projection filters and experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> decimation;

    auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config file");
    run->add_option("--config", config_path, "Experiment config file")->required()->check(CLI::ExistingFile);
    run->add_option("--seed", seed, "Override the scenario seed");
    run->add_option("--out", out, "Trace CSV path (summary goes to <path>.summary.csv)");
    run->add_option("--decimation", decimation, "Write every k-th sample")->check(CLI::PositiveNumber);

    std::string preset_name;
    auto* preset = app.add_subcommand("preset", "Run a built-in experiment (fig2: group-size sweep, fig3: comparison)");
    preset->add_option("name", preset_name, "fig2 or fig3")->required()->check(CLI::IsMember({"fig2", "fig3"}));
    preset->add_option("--seed", seed, "Override the scenario seed");
    preset->add_option("--out", out, "Trace CSV path");
    preset->add_option("--decimation", decimation, "Write every k-th sample")->check(CLI::PositiveNumber);

    std::uint64_t equiv_seed = 2024;
    std::size_t equiv_steps = 1000;
    double equiv_tol = 1e-10;
    auto* equiv = app.add_subcommand("equiv-suite", "Check the special-case reductions of BS-PAPA/BS-MPAPA");
    equiv->add_option("--seed", equiv_seed, "Input seed");
    equiv->add_option("--steps", equiv_steps, "Samples per run");
    equiv->add_option("--tol", equiv_tol, "Maximum allowed final-weight deviation");

    std::size_t taps = 1024;
    std::size_t order = 8;
    std::size_t group = 32;
    auto* count = app.add_subcommand("count-mults", "Regressor multiplications per step, direct vs efficient");
    count->add_option("--L", taps, "Filter length")->required();
    count->add_option("--M", order, "Projection order")->required();
    count->add_option("--P", group, "Group size")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run) return execute(bspapa::load_experiment_config(config_path), seed, out, decimation);
        if (*preset) return execute(bspapa::preset(preset_name), seed, out, decimation);
        if (*equiv) {
            bool ok = true;
            for (const auto& r : bspapa::run_equivalence_suite(equiv_seed, equiv_steps)) {
                const bool pass = r.max_abs_deviation <= equiv_tol;
                ok = ok && pass;
                std::printf("%-28s max|dh| = %.3e  %s\n", r.name.c_str(), r.max_abs_deviation,
                            pass ? "ok" : "FAIL");
            }
            return ok ? 0 : 1;
        }
        if (*count) {
            const bspapa::BlockPartition partition(taps, group);
            const bspapa::RegressorHistory history(taps, order);
            const auto gains = bspapa::GainVector::uniform(partition);
            const auto direct = bspapa::build_weighted_regressor_direct(gains, history).multiplication_count;
            const auto efficient = bspapa::build_weighted_regressor_efficient(gains, history).multiplication_count;
            std::printf("L=%zu M=%zu P=%zu N=%zu\ndirect    %zu\nefficient %zu\n", taps, order, group, taps / group,
                        direct, efficient);
            return 0;
        }
    } catch (const bspapa::ConfigError& err) {
        std::cerr << "config error: " << err.what() << '\n';
        return 2;
    } catch (const std::exception& err) {
        std::cerr << "error: " << err.what() << '\n';
        return 2;
    }
    return 0;
}
