#include <cmath>
#include <numbers>

#include "dlgrowth/econ.hpp"
#include "dlgrowth/errors.hpp"
#include "econ_detail.hpp"

namespace dlgrowth::econ {

// Harvey-style multiplicative heteroskedasticity, maximized by alternating a
// weighted LS step for the coefficients with a Fisher scoring step for the
// log-variance parameters.
FitResult gls_ml(const Eigen::VectorXd& y, const Eigen::MatrixXd& X, const Eigen::MatrixXd& Z,
                 const std::vector<std::string>& names,
                 const std::vector<std::string>& z_names) {
    detail::check_shapes(y, X);
    require(Z.rows() == X.rows(), "Z and X row counts differ");
    require(Z.cols() >= 1, "Z has no columns");
    require(z_names.size() == static_cast<size_t>(Z.cols()), "z_names do not match Z");
    detail::rank_checked_qr(X, &names);
    detail::rank_checked_qr(Z, &z_names);

    const int n = static_cast<int>(X.rows());
    const int kx = static_cast<int>(X.cols());
    const int kz = static_cast<int>(Z.cols());
    const double dn = static_cast<double>(n);

    // Start from OLS and the log-variance regression on log squared residuals.
    Eigen::VectorXd b = ols_coefficients(y, X);
    Eigen::VectorXd e = y - X * b;
    if (e.squaredNorm() <= 0.0)
        throw NumericalError("zero residual variance: degenerate likelihood");
    Eigen::VectorXd log_e2(n);
    for (int i = 0; i < n; ++i) log_e2(i) = std::log(std::max(e(i) * e(i), 1e-300));
    Eigen::VectorXd delta = ols_coefficients(log_e2, Z);
    delta(0) += 1.2704;  // -E[log chi2_1] under normality

    auto loglik = [&](const Eigen::VectorXd& bb, const Eigen::VectorXd& dd) {
        const Eigen::VectorXd lv = Z * dd;
        const Eigen::VectorXd r = y - X * bb;
        double ll = -0.5 * dn * std::log(2.0 * std::numbers::pi);
        for (int i = 0; i < n; ++i) ll -= 0.5 * (lv(i) + r(i) * r(i) * std::exp(-lv(i)));
        return ll;
    };

    double ll = loglik(b, delta);
    bool converged = false;
    constexpr int kMaxIter = 500;
    for (int iter = 0; iter < kMaxIter; ++iter) {
        const Eigen::VectorXd w = (-(Z * delta).array()).exp();  // 1/sigma_i^2
        const Eigen::MatrixXd xtwx = X.transpose() * w.asDiagonal() * X;
        b = xtwx.ldlt().solve(X.transpose() * (w.array() * y.array()).matrix());
        e = y - X * b;

        // Score 1/2 Z'(e^2/sigma^2 - 1); expected information 1/2 Z'Z.
        const Eigen::ArrayXd ratio = e.array().square() * w.array();
        const Eigen::VectorXd score = 0.5 * (Z.transpose() * (ratio - 1.0).matrix());
        const Eigen::MatrixXd info = 0.5 * (Z.transpose() * Z);
        delta += info.ldlt().solve(score);

        const double ll_new = loglik(b, delta);
        if (!std::isfinite(ll_new)) throw NumericalError("GLS likelihood became non-finite");
        const double change = std::abs(ll_new - ll) / (std::abs(ll) + 1.0);
        ll = ll_new;
        if (change < 1e-8) {
            converged = true;
            break;
        }
    }

    FitResult fit;
    fit.coef = b;
    fit.residuals = e;
    fit.n = n;
    fit.k = kx;
    fit.n_params = kx + kz;
    fit.estimator = "gls_ml";
    fit.names = names;
    fit.log_likelihood = ll;
    fit.converged = converged;
    fit.delta = delta;
    fit.delta_names = z_names;
    const Eigen::VectorXd w = (-(Z * delta).array()).exp();
    fit.cov =
        (X.transpose() * w.asDiagonal() * X).ldlt().solve(Eigen::MatrixXd::Identity(kx, kx));
    fit.cov_classical = fit.cov;
    fit.sigma2 = e.squaredNorm() / dn;
    if (!converged)
        fit.warnings.push_back("GLS-ML did not converge within " + std::to_string(kMaxIter) +
                               " iterations; reporting last iterate");
    return fit;
}

}  // namespace dlgrowth::econ
