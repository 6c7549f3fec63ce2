// Command-line front door: configuration, ingestion, estimation,
// resampling, projections, and the human-capital network trainer.
//
// Exit codes: 0 success, 1 validation failure, 2 numerical failure.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/pipeline.hpp"

namespace {

using dlgrowth::pipeline::Config;

struct CommonFlags {
    std::optional<std::string> config_path;
    std::optional<uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<unsigned> threads;

    void attach(CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed, "top-level RNG seed (overrides config)");
        cmd->add_option("--out", output_dir, "output root directory");
        cmd->add_option("--threads", threads, "worker threads (0 = hardware)");
    }

    Config resolve() const {
        Config config = Config::load(config_path);
        if (seed) config.set("seed", *seed);
        if (output_dir) config.set("execution.output_dir", *output_dir);
        if (threads) config.set("execution.threads", *threads);
        return config;
    }
};

struct DataFlags {
    std::string experiments;
    std::string baselines;
    std::string compute_inputs;

    void attach(CLI::App* cmd) {
        cmd->add_option("--experiments", experiments, "experiments CSV")->required();
        cmd->add_option("--baselines", baselines, "baseline survey CSV")->required();
        cmd->add_option("--compute-inputs", compute_inputs,
                        "per-model hardware/architecture CSV");
    }

    dlgrowth::io::IngestPaths paths() const { return {experiments, baselines, compute_inputs}; }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"dlgrowth: AI-augmented R&D growth toolkit"};
    app.require_subcommand(1);

    CommonFlags common;

    // ingest-check
    auto* ingest_cmd = app.add_subcommand("ingest-check", "validate a dataset bundle");
    DataFlags ingest_data;
    common.attach(ingest_cmd);
    ingest_data.attach(ingest_cmd);

    // estimate
    auto* estimate_cmd = app.add_subcommand("estimate", "fit an idea production function");
    DataFlags estimate_data;
    std::string model_id = "C1";
    std::optional<int> window_override;
    std::optional<std::string> estimator_override;
    common.attach(estimate_cmd);
    estimate_data.attach(estimate_cmd);
    estimate_cmd->add_option("--model", model_id, "model id A1..C2");
    estimate_cmd->add_option("--window", window_override, "fixed-effect window in months");
    estimate_cmd->add_option("--estimator", estimator_override, "auto|ols|gls");

    // bootstrap
    auto* bootstrap_cmd = app.add_subcommand("bootstrap", "bias-corrected bootstrap intervals");
    DataFlags bootstrap_data;
    std::string bootstrap_model = "C1";
    std::optional<int> replicates_override;
    std::optional<double> confidence_override;
    std::optional<std::string> statistic_override;
    common.attach(bootstrap_cmd);
    bootstrap_data.attach(bootstrap_cmd);
    bootstrap_cmd->add_option("--model", bootstrap_model, "model id A1..C2");
    bootstrap_cmd->add_option("--replicates", replicates_override, "bootstrap replicates");
    bootstrap_cmd->add_option("--confidence", confidence_override, "confidence level");
    bootstrap_cmd->add_option("--statistic", statistic_override,
                              "capital_share, sigma, or a coefficient name");

    // project
    auto* project_cmd = app.add_subcommand("project", "steady-state growth projections");
    std::vector<double> shares;
    std::vector<double> marks;
    std::optional<double> gamma_override, theta_override, n_override;
    common.attach(project_cmd);
    project_cmd->add_option("--shares", shares, "capital cost shares to evaluate");
    project_cmd->add_option("--marks", marks, "estimated-model shares to mark");
    project_cmd->add_option("--gamma", gamma_override, "R&D labour elasticity");
    project_cmd->add_option("--theta", theta_override, "R&D idea-stock elasticity");
    project_cmd->add_option("--n", n_override, "population growth rate");

    // compute-est
    auto* compute_cmd = app.add_subcommand("compute-est", "training-compute estimation");
    std::string compute_csv;
    common.attach(compute_cmd);
    compute_cmd->add_option("--inputs", compute_csv, "per-model fields CSV")->required();

    // robustness
    auto* robust_cmd = app.add_subcommand("robustness", "leave-k-out / windows / sigma sweeps");
    DataFlags robust_data;
    std::string robust_mode = "leavekout";
    std::string robust_model = "C1";
    std::optional<int> k_override;
    common.attach(robust_cmd);
    robust_data.attach(robust_cmd);
    robust_cmd->add_option("--mode", robust_mode, "leavekout|windows|sigma")->required();
    robust_cmd->add_option("--model", robust_model, "model id A1..C2");
    robust_cmd->add_option("--k", k_override, "records removed per subsample");

    // simulate
    auto* simulate_cmd = app.add_subcommand("simulate", "integrate the two-sector economy");
    dlgrowth::pipeline::SimulateOptions sim;
    std::vector<double> init_state;
    std::vector<double> shock_values;
    common.attach(simulate_cmd);
    simulate_cmd->add_option("--alpha", sim.params.alpha, "goods capital elasticity");
    simulate_cmd->add_option("--beta", sim.params.beta, "R&D capital elasticity");
    simulate_cmd->add_option("--gamma", sim.params.gamma, "R&D labour elasticity");
    simulate_cmd->add_option("--theta", sim.params.theta, "R&D idea-stock elasticity");
    simulate_cmd->add_option("--B", sim.params.B, "R&D shift parameter");
    simulate_cmd->add_option("--s", sim.params.s, "saving rate");
    simulate_cmd->add_option("--delta", sim.params.delta, "depreciation rate");
    simulate_cmd->add_option("--n", sim.params.n, "population growth rate");
    simulate_cmd->add_option("--alpha-k", sim.params.alpha_k, "R&D capital fraction");
    simulate_cmd->add_option("--alpha-l", sim.params.alpha_l, "R&D labour fraction");
    simulate_cmd->add_option("--horizon", sim.horizon, "horizon (0 = 50/n)");
    simulate_cmd->add_option("--step", sim.step, "integration step");
    simulate_cmd->add_option("--stride", sim.stride, "record every stride-th step");
    simulate_cmd->add_option("--init", init_state, "initial K L A (default: BGP state)");
    simulate_cmd->add_option("--shock", shock_values, "beta' gamma' applied at --t-shock");
    simulate_cmd->add_option("--t-shock", sim.t_shock, "shock time");

    // train-hc
    auto* hc_cmd = app.add_subcommand("train-hc", "train the human-capital network");
    std::string features_csv;
    common.attach(hc_cmd);
    hc_cmd->add_option("--features", features_csv, "author-feature CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        Config config = common.resolve();
        if (ingest_cmd->parsed()) {
            dlgrowth::pipeline::run_ingest_check(config, ingest_data.paths());
        } else if (estimate_cmd->parsed()) {
            if (window_override) config.set("estimate.window_months", *window_override);
            if (estimator_override) config.set("estimate.estimator", *estimator_override);
            dlgrowth::pipeline::run_estimate(config, estimate_data.paths(), model_id);
        } else if (bootstrap_cmd->parsed()) {
            if (replicates_override) config.set("bootstrap.replicates", *replicates_override);
            if (confidence_override) config.set("bootstrap.confidence", *confidence_override);
            if (statistic_override) config.set("bootstrap.statistic", *statistic_override);
            dlgrowth::pipeline::run_bootstrap(config, bootstrap_data.paths(), bootstrap_model);
        } else if (project_cmd->parsed()) {
            if (gamma_override) config.set("growth.gamma", *gamma_override);
            if (theta_override) config.set("growth.theta", *theta_override);
            if (n_override) config.set("growth.n", *n_override);
            dlgrowth::pipeline::run_project(config, shares, marks);
        } else if (compute_cmd->parsed()) {
            dlgrowth::pipeline::run_compute_est(config, compute_csv);
        } else if (robust_cmd->parsed()) {
            if (k_override) config.set("robustness.k", *k_override);
            dlgrowth::pipeline::run_robustness(config, robust_data.paths(), robust_mode,
                                               robust_model);
        } else if (simulate_cmd->parsed()) {
            if (!init_state.empty()) {
                dlgrowth::require(init_state.size() == 3, "--init needs exactly K L A");
                sim.from_bgp = false;
                sim.init = {0.0, init_state[0], init_state[1], init_state[2]};
            }
            if (!shock_values.empty()) {
                dlgrowth::require(shock_values.size() == 2, "--shock needs beta' gamma'");
                sim.shock = dlgrowth::growth::ShockSpec{shock_values[0], shock_values[1]};
            }
            dlgrowth::pipeline::run_simulate(config, sim);
        } else if (hc_cmd->parsed()) {
            dlgrowth::pipeline::run_train_hc(config, features_csv);
        }
    } catch (const dlgrowth::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << '\n';
        return 1;
    } catch (const dlgrowth::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
