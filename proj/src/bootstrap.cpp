#include <algorithm>
#include <cmath>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/growth.hpp"
#include "dlgrowth/inference.hpp"
#include "dlgrowth/parallel.hpp"
#include "dlgrowth/rng.hpp"
#include "dlgrowth/stats.hpp"

namespace dlgrowth::inference {

namespace {

// Statistic of one (sub)sample; throws ValidationError on rank-deficient
// designs, which bootstrap treats as a failed replicate.
double evaluate_statistic(std::span<const econ::ExperimentRecord> records,
                          const econ::RegressionSpec& spec, Statistic stat,
                          const std::string& coef_name) {
    if (stat == Statistic::Sigma) {
        const econ::TranslogResult tr = econ::translog_sigma(records, spec);
        if (!tr.sigma_defined) throw ValidationError("sigma undefined on this sample");
        return tr.sigma;
    }
    const econ::Design design = econ::build_design(records, spec);
    const Eigen::VectorXd coef = econ::ols_coefficients(design.y, design.X);
    if (stat == Statistic::CapitalShare) {
        const double beta = coef(design.col_log_c);
        const double gamma = coef(design.col_log_s);
        return growth::capital_cost_share(beta, gamma);
    }
    for (size_t j = 0; j < design.names.size(); ++j)
        if (design.names[j] == coef_name) return coef(static_cast<Eigen::Index>(j));
    throw ValidationError("no coefficient named '" + coef_name + "' in this design");
}

}  // namespace

void BootstrapConfig::validate() const {
    require(replicates >= 100, "bootstrap needs at least 100 replicates");
    require(confidence > 0.0 && confidence < 1.0, "confidence must lie in (0,1)");
    if (statistic == Statistic::Coefficient)
        require(!coef_name.empty(), "coefficient statistic needs a name");
}

BootstrapResult bootstrap_bc(std::span<const econ::ExperimentRecord> records,
                             const econ::RegressionSpec& spec, const BootstrapConfig& cfg) {
    cfg.validate();
    const size_t n = records.size();
    require(n >= 2, "bootstrap needs at least 2 records");

    BootstrapResult out;
    out.point = evaluate_statistic(records, spec, cfg.statistic, cfg.coef_name);

    const auto B = static_cast<size_t>(cfg.replicates);
    std::vector<double> values(B);
    std::vector<char> ok(B, 0);
    const unsigned threads = cfg.threads == 0 ? default_threads() : cfg.threads;

    parallel_for(
        B,
        [&](size_t r) {
            Rng rng(derive_seed(cfg.seed, "bootstrap", r));
            std::vector<econ::ExperimentRecord> resample;
            resample.reserve(n);
            for (size_t i = 0; i < n; ++i)
                resample.push_back(records[rng.below(n)]);
            try {
                values[r] = evaluate_statistic(resample, spec, cfg.statistic, cfg.coef_name);
                ok[r] = 1;
            } catch (const ValidationError&) {
                ok[r] = 0;  // rank-deficient resample: drop and count
            }
        },
        threads);

    out.replicates.reserve(B);
    for (size_t r = 0; r < B; ++r) {
        if (ok[r])
            out.replicates.push_back(values[r]);
        else
            ++out.failed;
    }
    if (out.failed > cfg.replicates / 5)
        throw NumericalError("bootstrap unreliable: " + std::to_string(out.failed) + " of " +
                             std::to_string(cfg.replicates) + " replicates failed");
    if (out.failed > 0)
        out.warnings.push_back("dropped " + std::to_string(out.failed) +
                               " rank-deficient replicate(s)");

    std::vector<double> sorted = out.replicates;
    std::sort(sorted.begin(), sorted.end());
    const double b_eff = static_cast<double>(sorted.size());

    double below = 0.0;
    for (double v : sorted) {
        if (v < out.point)
            below += 1.0;
        else
            break;
    }
    double frac = below / b_eff;
    if (frac <= 0.0 || frac >= 1.0) {
        // All replicates fell on one side of the point estimate; clamp so the
        // correction stays finite and say so.
        frac = std::clamp(frac, 0.5 / b_eff, 1.0 - 0.5 / b_eff);
        out.warnings.push_back("bias correction clamped: point estimate outside replicate range");
    }
    out.z0 = stats::normal_quantile(frac);

    const double z_half = stats::normal_quantile(1.0 - (1.0 - cfg.confidence) / 2.0);
    const double p_lower = stats::normal_cdf(2.0 * out.z0 - z_half);
    const double p_upper = stats::normal_cdf(2.0 * out.z0 + z_half);
    out.lower = stats::quantile_sorted(sorted, p_lower);
    out.upper = stats::quantile_sorted(sorted, p_upper);
    return out;
}

}  // namespace dlgrowth::inference
