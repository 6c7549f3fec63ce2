#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/growth.hpp"
#include "dlgrowth/inference.hpp"
#include "dlgrowth/parallel.hpp"
#include "dlgrowth/rng.hpp"
#include "dlgrowth/stats.hpp"

namespace dlgrowth::inference {

namespace {

constexpr double kChooseCap = 1e18;

// Lexicographic unranking of the idx-th k-subset of {0..n-1} (combinadic),
// used so parallel workers can jump straight to their replicate.
std::vector<int> unrank_subset(double idx, int n, int k) {
    std::vector<int> subset;
    subset.reserve(static_cast<size_t>(k));
    int candidate = 0;
    for (int pos = 0; pos < k; ++pos) {
        for (;; ++candidate) {
            const double count = n_choose_k(n - candidate - 1, k - pos - 1);
            if (idx < count) break;
            idx -= count;
        }
        subset.push_back(candidate);
        ++candidate;
    }
    return subset;
}

std::vector<std::string> stat_names(const econ::RegressionSpec& spec) {
    std::vector<std::string> names{econ::kLogS, econ::kLogC, econ::kExtraData, econ::kReimpl};
    if (spec.include_trend) names.push_back(econ::kTrend);
    names.push_back("capital_share");
    return names;
}

std::vector<double> refit_stats(std::span<const econ::ExperimentRecord> records,
                                const econ::RegressionSpec& spec,
                                const std::vector<std::string>& names) {
    const econ::Design design = econ::build_design(records, spec);
    Eigen::VectorXd coef;
    if (spec.estimator == econ::Estimator::GlsMl) {
        coef = econ::fit_design(design, econ::Estimator::GlsMl).coef;
    } else {
        coef = econ::ols_coefficients(design.y, design.X);
    }
    std::vector<double> out;
    out.reserve(names.size());
    for (const auto& name : names) {
        if (name == "capital_share") {
            out.push_back(growth::capital_cost_share(coef(design.col_log_c),
                                                     coef(design.col_log_s)));
            continue;
        }
        double value = std::numeric_limits<double>::quiet_NaN();
        for (size_t j = 0; j < design.names.size(); ++j)
            if (design.names[j] == name) {
                value = coef(static_cast<Eigen::Index>(j));
                break;
            }
        out.push_back(value);
    }
    return out;
}

}  // namespace

double n_choose_k(int n, int k) {
    if (k < 0 || n < 0 || k > n) return 0.0;
    k = std::min(k, n - k);
    double result = 1.0;
    for (int i = 1; i <= k; ++i) {
        result *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (result > kChooseCap) return kChooseCap;
    }
    return std::round(result);
}

void RobustnessConfig::validate(size_t n_records) const {
    require(k > 0, "k must be > 0");
    require(static_cast<size_t>(k) < n_records, "k must be < number of records");
    require(max_subsamples > 0, "max_subsamples must be > 0");
    if (mode == Mode::Exhaustive)
        require(n_choose_k(static_cast<int>(n_records), k) <= static_cast<double>(max_subsamples),
                "exhaustive mode requires C(n,k) <= max_subsamples");
}

LeaveKOutResult leave_k_out(std::span<const econ::ExperimentRecord> records,
                            const econ::RegressionSpec& spec, const RobustnessConfig& cfg) {
    const int n = static_cast<int>(records.size());
    cfg.validate(records.size());

    const double total = n_choose_k(n, cfg.k);
    LeaveKOutResult out;
    out.coef_names = stat_names(spec);
    out.exhaustive = cfg.mode != RobustnessConfig::Mode::Sampled &&
                     total <= static_cast<double>(cfg.max_subsamples);

    if (out.exhaustive) {
        const auto count = static_cast<size_t>(total);
        out.removed.resize(count);
        parallel_for(
            count,
            [&](size_t i) { out.removed[i] = unrank_subset(static_cast<double>(i), n, cfg.k); },
            cfg.threads == 0 ? default_threads() : cfg.threads);
    } else {
        // Distinct uniformly drawn index sets; the draw sequence is serial
        // and seed-determined, so any later parallelism cannot reorder it.
        const auto target = static_cast<size_t>(cfg.max_subsamples);
        std::set<std::vector<int>> seen;
        out.removed.reserve(target);
        uint64_t attempt = 0;
        std::vector<int> pool(static_cast<size_t>(n));
        while (out.removed.size() < target) {
            Rng rng(derive_seed(cfg.seed, "leave_k_out", attempt++));
            for (int i = 0; i < n; ++i) pool[static_cast<size_t>(i)] = i;
            std::vector<int> subset(static_cast<size_t>(cfg.k));
            for (int j = 0; j < cfg.k; ++j) {
                const auto pick = static_cast<size_t>(rng.below(static_cast<uint64_t>(n - j)));
                subset[static_cast<size_t>(j)] = pool[pick];
                std::swap(pool[pick], pool[static_cast<size_t>(n - j - 1)]);
            }
            std::sort(subset.begin(), subset.end());
            if (seen.insert(subset).second) out.removed.push_back(std::move(subset));
        }
    }

    const size_t count = out.removed.size();
    out.estimates.resize(count);
    std::vector<char> failed(count, 0);
    parallel_for(
        count,
        [&](size_t i) {
            std::vector<econ::ExperimentRecord> subsample;
            subsample.reserve(records.size() - static_cast<size_t>(cfg.k));
            const auto& removed = out.removed[i];
            size_t next = 0;
            for (int row = 0; row < n; ++row) {
                if (next < removed.size() && removed[next] == row) {
                    ++next;
                    continue;
                }
                subsample.push_back(records[static_cast<size_t>(row)]);
            }
            try {
                out.estimates[i] = refit_stats(subsample, spec, out.coef_names);
            } catch (const ValidationError&) {
                // Rank-deficient subsample (e.g. a control became constant);
                // keep the slot so the sweep stays reproducible.
                out.estimates[i].assign(out.coef_names.size(),
                                        std::numeric_limits<double>::quiet_NaN());
                failed[i] = 1;
            }
        },
        cfg.threads == 0 ? default_threads() : cfg.threads);
    for (char f : failed) out.failed += f;
    if (static_cast<size_t>(out.failed) == count)
        throw NumericalError("every leave-k-out refit failed");

    for (size_t c = 0; c < out.coef_names.size(); ++c) {
        std::vector<double> column;
        column.reserve(count);
        for (const auto& row : out.estimates)
            if (std::isfinite(row[c])) column.push_back(row[c]);
        out.medians.push_back(stats::median(column));
        out.iqrs.push_back(stats::iqr(std::move(column)));
    }
    return out;
}

std::vector<WindowSweepRow> window_sweep(std::span<const econ::ExperimentRecord> records,
                                         const econ::RegressionSpec& spec,
                                         std::span<const int> lengths) {
    require(!lengths.empty(), "window sweep needs at least one length");
    std::vector<WindowSweepRow> rows;
    rows.reserve(lengths.size());
    for (int length : lengths) {
        WindowSweepRow row;
        row.window_months = length;
        try {
            econ::RegressionSpec window_spec = spec;
            window_spec.window_months = length;
            row.fit = econ::fit_design(econ::build_design(records, window_spec),
                                       window_spec.estimator);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace dlgrowth::inference
