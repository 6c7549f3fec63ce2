#include <algorithm>
#include <cmath>
#include <map>

#include "dlgrowth/econ.hpp"
#include "dlgrowth/errors.hpp"

namespace dlgrowth::econ {

std::string estimator_name(Estimator e) {
    switch (e) {
        case Estimator::OlsRobust: return "ols_robust";
        case Estimator::GlsMl: return "gls_ml";
        case Estimator::Auto: return "auto";
    }
    return "unknown";
}

void RegressionSpec::validate() const {
    require(window_months > 0, "window_months must be > 0");
}

int period_index(const CivilDate& date, int window_months) {
    require(window_months > 0, "window_months must be > 0");
    const int months = months_since_2012(date);
    // Floor division also for pre-2012 dates.
    int q = months / window_months;
    if (months % window_months != 0 && months < 0) --q;
    return q;
}

Design build_design(std::span<const ExperimentRecord> records, const RegressionSpec& spec) {
    spec.validate();
    Design design;

    std::vector<size_t> kept;
    kept.reserve(records.size());
    size_t dropped = 0;
    for (size_t i = 0; i < records.size(); ++i) {
        if (records[i].gtilde > 0.0) {
            kept.push_back(i);
        } else {
            ++dropped;
        }
    }
    if (dropped > 0)
        design.warnings.push_back("excluded " + std::to_string(dropped) +
                                  " record(s) with gtilde <= 0 (log outcome undefined)");
    require(!kept.empty(), "no records with gtilde > 0");

    // Dummy key: (task, period) when pooled, otherwise period only. Sorted
    // keys give a canonical column order independent of record order.
    std::map<std::pair<std::string, int>, int> dummy_count;
    auto key_of = [&](const ExperimentRecord& r) {
        return std::make_pair(spec.pooled ? r.task : std::string(),
                              period_index(r.date, spec.window_months));
    };
    for (size_t i : kept) ++dummy_count[key_of(records[i])];

    std::map<std::pair<std::string, int>, int> dummy_col;
    int next = 0;
    for (const auto& [key, count] : dummy_count) {
        dummy_col[key] = next++;
        if (count == 1) {
            const std::string label =
                key.first.empty() ? "p=" + std::to_string(key.second)
                                  : key.first + ", p=" + std::to_string(key.second);
            design.warnings.push_back("period dummy [" + label +
                                      "] has a single record and absorbs it");
        }
    }
    design.n_dummies = next;

    const int n = static_cast<int>(kept.size());
    int k = design.n_dummies + 4;  // log S, log C, extra_data, reimplementation
    if (spec.include_trend) ++k;
    if (spec.translog) ++k;

    design.y.resize(n);
    design.X = Eigen::MatrixXd::Zero(n, k);
    design.col_log_s = design.n_dummies;
    design.col_log_c = design.n_dummies + 1;
    int col = design.n_dummies + 4;
    if (spec.include_trend) design.col_trend = col++;
    if (spec.translog) design.col_quad = col++;

    for (int row = 0; row < n; ++row) {
        const ExperimentRecord& r = records[kept[static_cast<size_t>(row)]];
        design.y(row) = std::log(r.gtilde);
        design.X(row, dummy_col.at(key_of(r))) = 1.0;
        design.X(row, design.col_log_s) = r.log_human_capital;
        design.X(row, design.col_log_c) = r.log_compute;
        design.X(row, design.n_dummies + 2) = r.extra_data ? 1.0 : 0.0;
        design.X(row, design.n_dummies + 3) = r.reimplementation ? 1.0 : 0.0;
        if (spec.include_trend) design.X(row, design.col_trend) = years_since_2012(r.date);
        if (spec.translog) {
            const double gap = r.log_human_capital - r.log_compute;
            design.X(row, design.col_quad) = 0.5 * gap * gap;
        }
        design.record_rows.push_back(kept[static_cast<size_t>(row)]);
    }

    design.names.resize(static_cast<size_t>(k));
    for (const auto& [key, idx] : dummy_col) {
        const std::string label = key.first.empty()
                                      ? "fe[p=" + std::to_string(key.second) + "]"
                                      : "fe[" + key.first + ",p=" + std::to_string(key.second) + "]";
        design.names[static_cast<size_t>(idx)] = label;
    }
    design.names[static_cast<size_t>(design.col_log_s)] = kLogS;
    design.names[static_cast<size_t>(design.col_log_c)] = kLogC;
    design.names[static_cast<size_t>(design.n_dummies + 2)] = kExtraData;
    design.names[static_cast<size_t>(design.n_dummies + 3)] = kReimpl;
    if (spec.include_trend) design.names[static_cast<size_t>(design.col_trend)] = kTrend;
    if (spec.translog) design.names[static_cast<size_t>(design.col_quad)] = kQuad;

    return design;
}

}  // namespace dlgrowth::econ
