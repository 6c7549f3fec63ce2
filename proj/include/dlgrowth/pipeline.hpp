#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dlgrowth/dataset.hpp"
#include "dlgrowth/dynamics.hpp"

namespace dlgrowth::pipeline {

using json = nlohmann::json;

// Declarative run configuration: a single JSON document with defaults,
// optionally overlaid by a config file and then by CLI flags (one key per
// flag). The "execution" section (output root, threads) never enters run
// digests or manifests, so where results are written cannot change what is
// computed.
class Config {
public:
    static Config defaults();
    static Config load(const std::optional<std::string>& path);

    // Dotted-path override, e.g. set("growth.gamma", 0.45).
    void set(const std::string& dotted_key, const json& value);

    const json& tree() const { return data_; }
    json canonical() const;  // without the execution section

    uint64_t seed() const;
    std::string output_dir() const;
    unsigned threads() const;

    double gamma() const;
    double theta() const;
    double pop_growth() const;

    int window_months() const;
    econ::Estimator estimator() const;
    std::string task_for(char group) const;  // 'A' or 'B'

    int bootstrap_replicates() const;
    double bootstrap_confidence() const;
    std::string bootstrap_statistic() const;

    int leave_out_k() const;
    long max_subsamples() const;
    std::vector<int> window_lengths() const;
    int sigma_replicates() const;

    const json& hc() const;

private:
    json data_;
};

// Output directory keyed by the digest of (command, canonical config, input
// digests): one directory per distinct run. Writes manifest.json on finish.
class RunContext {
public:
    RunContext(std::string command, const Config& config,
               const std::vector<std::string>& input_paths);

    const std::filesystem::path& dir() const { return dir_; }
    const std::string& digest() const { return digest_; }

    std::filesystem::path output_path(const std::string& name);
    void warn(const std::string& message);
    void warn_all(const std::vector<std::string>& messages);
    void finish();  // writes manifest.json

private:
    std::string command_;
    Config config_;
    json inputs_;
    std::vector<std::string> outputs_;
    std::vector<std::string> warnings_;
    std::filesystem::path dir_;
    std::string digest_;
    std::string started_at_;
};

// Maps a Table-10 style model id (A1..C2) onto a concrete specification and
// task subset. Unknown ids are rejected with the list of valid ones.
struct ModelPlan {
    std::string id;
    econ::RegressionSpec spec;
    std::vector<std::string> tasks;  // empty = pooled over all tasks
};
ModelPlan plan_for_model(const std::string& model_id, const Config& config);

// Subcommand drivers; each creates one run directory and returns it.
std::filesystem::path run_ingest_check(const Config& config, const io::IngestPaths& paths);
std::filesystem::path run_estimate(const Config& config, const io::IngestPaths& paths,
                                   const std::string& model_id);
std::filesystem::path run_bootstrap(const Config& config, const io::IngestPaths& paths,
                                    const std::string& model_id);
std::filesystem::path run_project(const Config& config, const std::vector<double>& share_grid,
                                  const std::vector<double>& marks);
std::filesystem::path run_compute_est(const Config& config, const std::string& input_csv);
std::filesystem::path run_robustness(const Config& config, const io::IngestPaths& paths,
                                     const std::string& mode, const std::string& model_id);

struct SimulateOptions {
    growth::GrowthParams params;
    bool from_bgp = true;
    dynamics::EconomyState init;  // used when from_bgp is false
    double horizon = 0.0;         // 0 -> 50/n
    double step = 0.1;
    int stride = 10;
    std::optional<growth::ShockSpec> shock;
    double t_shock = 0.0;
};
std::filesystem::path run_simulate(const Config& config, const SimulateOptions& options);

std::filesystem::path run_train_hc(const Config& config, const std::string& features_csv);

}  // namespace dlgrowth::pipeline
