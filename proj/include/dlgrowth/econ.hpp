#pragma once

#include <Eigen/Dense>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "dlgrowth/dates.hpp"

namespace dlgrowth::econ {

// One deep-learning model observation, ready for estimation.
struct ExperimentRecord {
    std::string task;
    CivilDate date;
    double gtilde = 0.0;             // innovation proxy; log taken in the design
    double log_compute = 0.0;        // log FLOP
    double log_human_capital = 0.0;  // log quality-adjusted researcher input
    bool extra_data = false;
    bool reimplementation = false;
};

enum class Estimator { OlsRobust, GlsMl, Auto };

std::string estimator_name(Estimator e);

struct RegressionSpec {
    int window_months = 12;      // period length for the time fixed effects
    bool include_trend = false;  // fractional years since 2012-01-01
    bool pooled = false;         // task-specific period dummies
    Estimator estimator = Estimator::Auto;
    // Adds the 1/2 (log S - log C)^2 column used for the CES curvature fit.
    bool translog = false;

    void validate() const;
};

struct Design {
    Eigen::VectorXd y;  // log gtilde
    Eigen::MatrixXd X;
    std::vector<std::string> names;
    std::vector<size_t> record_rows;  // row -> index into the input records
    std::vector<std::string> warnings;
    int n_dummies = 0;
    int col_log_s = -1;
    int col_log_c = -1;
    int col_trend = -1;
    int col_quad = -1;

    int n() const { return static_cast<int>(X.rows()); }
    int k() const { return static_cast<int>(X.cols()); }
};

// Builds the outcome and regressors: one dummy per occupied period (per
// task-period when pooled; no global intercept), log S, log C, the two
// control flags, and optionally the trend and translog curvature columns.
// Records with gtilde <= 0 are excluded with a warning. Deterministic and
// order-independent: permuting records permutes rows but leaves columns,
// names, and fits unchanged.
Design build_design(std::span<const ExperimentRecord> records, const RegressionSpec& spec);

// Period index under the window rule: floor(months since 2012-01 / window).
int period_index(const CivilDate& date, int window_months);

struct FitResult {
    Eigen::VectorXd coef;
    Eigen::MatrixXd cov;            // robust (OLS) or model-based (GLS)
    Eigen::MatrixXd cov_classical;  // sigma^2 (X'X)^-1, OLS only
    Eigen::VectorXd residuals;
    double log_likelihood = 0.0;
    double sigma2 = 0.0;  // ML residual variance (OLS)
    int n = 0;
    int k = 0;
    int n_params = 0;  // coefficient count + variance-model parameters
    std::string estimator;
    std::vector<std::string> names;
    std::vector<std::string> warnings;
    bool converged = true;
    // GLS variance model Var(u|z) = exp(z'delta).
    Eigen::VectorXd delta;
    std::vector<std::string> delta_names;

    double coefficient(const std::string& name) const;
    double se(const std::string& name) const;
    std::optional<size_t> find(const std::string& name) const;
};

// Least squares with the White heteroskedasticity-consistent covariance
// scaled by (n-1)/(n-k), plus the Gaussian log-likelihood.
FitResult ols_robust(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     const std::vector<std::string>& names);

// Coefficients only; the cheap path for resampling loops. Throws on rank
// deficiency like ols_robust.
Eigen::VectorXd ols_coefficients(const Eigen::VectorXd& y, const Eigen::MatrixXd& X);

struct BreuschPagan {
    double lm = 0.0;
    double df = 0.0;
    double p_value = 1.0;
};

// LM = n R^2 of the auxiliary regression of squared residuals on X;
// chi-square with k-1 degrees of freedom.
BreuschPagan breusch_pagan(const FitResult& fit, const Eigen::MatrixXd& X);

// Feasible GLS under multiplicative heteroskedasticity Var(u|z) = exp(z'delta),
// fit by iterated maximization of the Gaussian likelihood (scoring steps) to
// relative tolerance 1e-8. Z must contain a leading constant column.
FitResult gls_ml(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                 const std::vector<std::string>& names,
                 const std::vector<std::string>& z_names);

struct LikelihoodRatio {
    double statistic = 0.0;
    int df = 0;
    double p_value = 1.0;
};

// 2 (sum of unrestricted LLs - restricted LL) against chi-square with the
// parameter-count difference. The unrestricted fits must partition the
// restricted sample.
LikelihoodRatio likelihood_ratio(const FitResult& restricted,
                                 std::span<const FitResult> unrestricted);

// Canonical regressor names used across the toolkit.
inline const std::string kLogS = "log_human_capital";
inline const std::string kLogC = "log_compute";
inline const std::string kExtraData = "extra_data";
inline const std::string kReimpl = "reimplementation";
inline const std::string kTrend = "trend";
inline const std::string kQuad = "ces_curvature";

// Fits the design with the requested estimator; Auto runs Breusch-Pagan at
// the 5% level on the OLS fit and switches to GLS-ML on rejection. The GLS
// variance regressors are the continuous columns (log S, log C, trend).
FitResult fit_design(const Design& design, Estimator estimator);

}  // namespace dlgrowth::econ
