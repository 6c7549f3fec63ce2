#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlgrowth/econ.hpp"
#include "dlgrowth/translog.hpp"

namespace dlgrowth::inference {

enum class Statistic { CapitalShare, Sigma, Coefficient };

struct BootstrapConfig {
    int replicates = 10000;
    double confidence = 0.90;
    uint64_t seed = 0;
    Statistic statistic = Statistic::CapitalShare;
    std::string coef_name;  // for Statistic::Coefficient
    unsigned threads = 0;   // 0 -> hardware default

    void validate() const;
};

struct BootstrapResult {
    double point = 0.0;
    double lower = 0.0;
    double upper = 0.0;
    double z0 = 0.0;
    std::vector<double> replicates;  // in replicate-index order
    int failed = 0;
    std::vector<std::string> warnings;
};

// Case (pairs) bootstrap of the chosen statistic with the bias-corrected
// percentile interval: z0 = Phi^-1(#{theta* < thetahat}/B) and endpoints at
// the Phi(2 z0 -+ z_{alpha/2}) percentiles of the replicate distribution.
// Replicate r draws its RNG from (seed, r), so results are identical for any
// thread count. Rank-deficient resamples are dropped and counted; more than
// 20% failures aborts.
BootstrapResult bootstrap_bc(std::span<const econ::ExperimentRecord> records,
                             const econ::RegressionSpec& spec, const BootstrapConfig& cfg);

struct RobustnessConfig {
    int k = 3;
    enum class Mode { Exhaustive, Sampled, Auto } mode = Mode::Auto;
    long max_subsamples = 1000000;
    uint64_t seed = 0;
    unsigned threads = 0;

    void validate(size_t n_records) const;
};

struct LeaveKOutResult {
    std::vector<std::string> coef_names;  // stable named coefficients + share
    // replicate x coefficient matrix, one row per subsample, in enumeration
    // (or draw) order. Rows of a failed refit (rank-deficient subsample) are
    // NaN and counted in failed.
    std::vector<std::vector<double>> estimates;
    std::vector<std::vector<int>> removed;  // removed record indices per row
    bool exhaustive = false;
    int failed = 0;
    std::vector<double> medians;  // over successful refits
    std::vector<double> iqrs;
};

// Refits the model on every subsample that removes k records: exhaustively
// when C(n,k) <= max_subsamples, otherwise on distinct uniformly drawn index
// sets. Deterministic for a given seed under any parallelism.
LeaveKOutResult leave_k_out(std::span<const econ::ExperimentRecord> records,
                            const econ::RegressionSpec& spec, const RobustnessConfig& cfg);

struct WindowSweepRow {
    int window_months = 0;
    std::optional<econ::FitResult> fit;
    std::string error;  // set when this window failed
};

// Re-estimates the specification for each window length.
std::vector<WindowSweepRow> window_sweep(std::span<const econ::ExperimentRecord> records,
                                         const econ::RegressionSpec& spec,
                                         std::span<const int> lengths);

struct KdeResult {
    std::vector<double> grid;
    std::vector<double> density;
    double bandwidth = 0.0;
};

// Gaussian kernel density with Silverman's bandwidth
// 0.9 min(sd, IQR/1.34) n^(-1/5) by default. Needs >= 2 distinct values.
KdeResult kde(std::span<const double> values, std::optional<double> bandwidth = std::nullopt,
              int grid_points = 512);

// Number of k-subsets of n, saturating at a large cap to avoid overflow.
double n_choose_k(int n, int k);

}  // namespace dlgrowth::inference
