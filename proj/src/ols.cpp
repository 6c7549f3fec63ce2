#include <cmath>
#include <numbers>
#include <sstream>

#include "dlgrowth/csv.hpp"
#include "dlgrowth/econ.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/stats.hpp"
#include "econ_detail.hpp"

namespace dlgrowth::econ {

using detail::check_shapes;
using detail::rank_checked_qr;

namespace {

double gaussian_loglik(double rss, double n) {
    const double sigma2 = rss / n;
    return -0.5 * n * (std::log(2.0 * std::numbers::pi) + std::log(sigma2) + 1.0);
}

}  // namespace

double FitResult::coefficient(const std::string& name) const {
    auto idx = find(name);
    require(idx.has_value(), "no coefficient named '" + name + "'");
    return coef(static_cast<Eigen::Index>(*idx));
}

double FitResult::se(const std::string& name) const {
    auto idx = find(name);
    require(idx.has_value(), "no coefficient named '" + name + "'");
    const auto i = static_cast<Eigen::Index>(*idx);
    return std::sqrt(cov(i, i));
}

std::optional<size_t> FitResult::find(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return i;
    return std::nullopt;
}

Eigen::VectorXd ols_coefficients(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    check_shapes(y, X);
    auto qr = rank_checked_qr(X, nullptr);
    return qr.solve(y);
}

FitResult ols_robust(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
                     const std::vector<std::string>& names) {
    check_shapes(y, X);
    require(names.size() == static_cast<size_t>(X.cols()), "names do not match columns");
    auto qr = rank_checked_qr(X, &names);

    FitResult fit;
    fit.coef = qr.solve(y);
    fit.residuals = y - X * fit.coef;
    fit.n = static_cast<int>(X.rows());
    fit.k = static_cast<int>(X.cols());
    fit.n_params = fit.k + 1;  // coefficients + error variance
    fit.estimator = "ols_robust";
    fit.names = names;

    const double n = static_cast<double>(fit.n);
    const double k = static_cast<double>(fit.k);
    const double rss = fit.residuals.squaredNorm();
    if (rss <= 0.0) throw NumericalError("zero residual variance: degenerate likelihood");
    fit.sigma2 = rss / n;
    fit.log_likelihood = gaussian_loglik(rss, n);

    const Eigen::MatrixXd xtx_inv =
        (X.transpose() * X).ldlt().solve(Eigen::MatrixXd::Identity(fit.k, fit.k));
    // White sandwich with the (n-1)/(n-k) degrees-of-freedom correction.
    const Eigen::MatrixXd meat =
        X.transpose() * fit.residuals.array().square().matrix().asDiagonal() * X;
    fit.cov = xtx_inv * meat * xtx_inv * ((n - 1.0) / (n - k));
    fit.cov_classical = xtx_inv * (rss / (n - k));
    return fit;
}

BreuschPagan breusch_pagan(const FitResult& fit, const Eigen::MatrixXd& X) {
    require(fit.n == X.rows(), "fit and X disagree on n");
    require(fit.residuals.size() == X.rows(), "fit has no residuals");
    const int k = static_cast<int>(X.cols());
    if (k < 2) throw NumericalError("Breusch-Pagan unavailable: no non-intercept regressors");

    const Eigen::VectorXd u2 = fit.residuals.array().square();
    const double tss = (u2.array() - u2.mean()).square().sum();
    BreuschPagan bp;
    bp.df = static_cast<double>(k - 1);
    if (tss < 1e-300) {
        // Squared residuals all equal; nothing to explain.
        bp.lm = 0.0;
        bp.p_value = 1.0;
        return bp;
    }
    Eigen::VectorXd aux_coef;
    try {
        aux_coef = ols_coefficients(u2, X);
    } catch (const ValidationError&) {
        throw NumericalError("Breusch-Pagan unavailable: degenerate auxiliary regression");
    }
    const double rss = (u2 - X * aux_coef).squaredNorm();
    const double r2 = 1.0 - rss / tss;
    bp.lm = static_cast<double>(fit.n) * std::max(0.0, r2);
    bp.p_value = stats::chi2_sf(bp.lm, bp.df);
    return bp;
}

LikelihoodRatio likelihood_ratio(const FitResult& restricted,
                                 std::span<const FitResult> unrestricted) {
    require(!unrestricted.empty(), "need at least one unrestricted fit");
    int n_total = 0;
    int params_total = 0;
    double ll_total = 0.0;
    for (const auto& fit : unrestricted) {
        n_total += fit.n;
        params_total += fit.n_params;
        ll_total += fit.log_likelihood;
    }
    require(n_total == restricted.n,
            "not nested: unrestricted fits must partition the restricted sample (n " +
                std::to_string(n_total) + " vs " + std::to_string(restricted.n) + ")");
    LikelihoodRatio lr;
    lr.df = params_total - restricted.n_params;
    require(lr.df >= 0, "not nested: restricted model has more parameters");
    lr.statistic = std::max(0.0, 2.0 * (ll_total - restricted.log_likelihood));
    lr.p_value = lr.df == 0 ? 1.0 : stats::chi2_sf(lr.statistic, lr.df);
    return lr;
}

FitResult fit_design(const Design& design, Estimator estimator) {
    auto gls_inputs = [&] {
        std::vector<int> cols{design.col_log_s, design.col_log_c};
        if (design.col_trend >= 0) cols.push_back(design.col_trend);
        Eigen::MatrixXd Z(design.X.rows(), 1 + static_cast<int>(cols.size()));
        Z.col(0).setOnes();
        std::vector<std::string> z_names{"const"};
        for (size_t j = 0; j < cols.size(); ++j) {
            Z.col(1 + static_cast<Eigen::Index>(j)) = design.X.col(cols[j]);
            z_names.push_back(design.names[static_cast<size_t>(cols[j])]);
        }
        return std::make_pair(Z, z_names);
    };

    if (estimator == Estimator::OlsRobust) {
        FitResult fit = ols_robust(design.y, design.X, design.names);
        fit.warnings.insert(fit.warnings.end(), design.warnings.begin(), design.warnings.end());
        return fit;
    }
    if (estimator == Estimator::GlsMl) {
        auto [Z, z_names] = gls_inputs();
        FitResult fit = gls_ml(design.y, design.X, Z, design.names, z_names);
        fit.warnings.insert(fit.warnings.end(), design.warnings.begin(), design.warnings.end());
        return fit;
    }
    // Auto: OLS first, switch to GLS when Breusch-Pagan rejects at 5%.
    FitResult fit = ols_robust(design.y, design.X, design.names);
    BreuschPagan bp;
    bool bp_ok = true;
    try {
        bp = breusch_pagan(fit, design.X);
    } catch (const NumericalError&) {
        bp_ok = false;
    }
    if (bp_ok && bp.p_value < 0.05) {
        auto [Z, z_names] = gls_inputs();
        FitResult gls = gls_ml(design.y, design.X, Z, design.names, z_names);
        gls.warnings.insert(gls.warnings.end(), design.warnings.begin(), design.warnings.end());
        gls.warnings.push_back("Breusch-Pagan rejected homoskedasticity (p = " +
                               csv::format_double(bp.p_value) + "); estimated by GLS-ML");
        return gls;
    }
    fit.warnings.insert(fit.warnings.end(), design.warnings.begin(), design.warnings.end());
    if (!bp_ok) fit.warnings.push_back("Breusch-Pagan unavailable; kept OLS");
    return fit;
}

}  // namespace dlgrowth::econ
