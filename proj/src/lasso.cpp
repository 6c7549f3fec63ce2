#include "dlgrowth/lasso.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/rng.hpp"

namespace dlgrowth::econ {

namespace {

constexpr double kGapTol = 1e-7;
constexpr int kMaxPasses = 100000;

struct Standardized {
    Eigen::MatrixXd Z;
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;  // 1 for constant columns (which are zeroed)
    double y_mean = 0.0;
    Eigen::VectorXd yc;
    std::vector<int> constant_cols;
};

Standardized standardize(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    Standardized s;
    const auto n = X.rows();
    const auto k = X.cols();
    s.mean = X.colwise().mean();
    s.scale.resize(k);
    s.Z.resize(n, k);
    for (Eigen::Index j = 0; j < k; ++j) {
        Eigen::VectorXd centered = X.col(j).array() - s.mean(j);
        const double sd = std::sqrt(centered.squaredNorm() / static_cast<double>(n));
        if (sd < 1e-12) {
            s.scale(j) = 1.0;
            s.Z.col(j).setZero();
            s.constant_cols.push_back(static_cast<int>(j));
        } else {
            s.scale(j) = sd;
            s.Z.col(j) = centered / sd;
        }
    }
    s.y_mean = y.mean();
    s.yc = y.array() - s.y_mean;
    return s;
}

// Coordinate descent on standardized data; returns standardized coefficients.
Eigen::VectorXd cd_fit(const Eigen::MatrixXd& Z, const Eigen::VectorXd& yc, double lambda,
                       Eigen::VectorXd b) {
    const auto n = Z.rows();
    const auto k = Z.cols();
    const double dn = static_cast<double>(n);

    if (lambda <= 0.0) return Z.colPivHouseholderQr().solve(yc);

    Eigen::VectorXd r = yc - Z * b;
    const double gap_scale = std::max(1.0, yc.squaredNorm() / (2.0 * dn));
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        for (Eigen::Index j = 0; j < k; ++j) {
            if (Z.col(j).isZero(0.0)) continue;
            const double rho = Z.col(j).dot(r) / dn + b(j);  // columns have unit variance
            const double bj = std::copysign(std::max(0.0, std::abs(rho) - lambda), rho);
            if (bj != b(j)) {
                r += Z.col(j) * (b(j) - bj);
                b(j) = bj;
            }
        }
        // Duality gap: with u = s r/n (s scaling r/n into the dual feasible
        // set), gap = lambda ||b||_1 - r'Zb/n + (1-s^2)||r||^2/(2n)-ish; the
        // exact expression below follows from the Fenchel dual.
        const double primal = r.squaredNorm() / (2.0 * dn) + lambda * b.lpNorm<1>();
        const double zr_inf = (Z.transpose() * r).lpNorm<Eigen::Infinity>();
        const double scale = std::min(1.0, dn * lambda / std::max(zr_inf, 1e-300));
        const Eigen::VectorXd u = (scale / dn) * r;
        const double dual =
            yc.squaredNorm() / (2.0 * dn) - (dn / 2.0) * (u - yc / dn).squaredNorm();
        if (primal - dual <= kGapTol * gap_scale) break;
    }
    return b;
}

}  // namespace

LassoFit lasso(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
               std::vector<double> lambda_grid, int folds, uint64_t seed) {
    require(y.size() == X.rows(), "y and X row counts differ");
    require(X.rows() >= 3, "lasso needs at least 3 observations");
    require(!lambda_grid.empty(), "lambda grid is empty");
    for (double l : lambda_grid) require(l >= 0.0, "lambda must be >= 0");
    require(folds >= 2 && folds <= static_cast<int>(X.rows()), "invalid fold count");

    std::sort(lambda_grid.begin(), lambda_grid.end(), std::greater<>());
    lambda_grid.erase(std::unique(lambda_grid.begin(), lambda_grid.end()), lambda_grid.end());
    const auto nl = lambda_grid.size();
    const auto n = X.rows();
    const auto k = X.cols();

    LassoFit fit;
    fit.lambdas = lambda_grid;
    fit.cv_mse.assign(nl, 0.0);

    // Cross-validation with a seeded shuffle striped into folds.
    std::vector<int> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, "lasso_cv"));
    rng.shuffle(order);
    std::vector<int> fold_of(static_cast<size_t>(n));
    for (size_t i = 0; i < order.size(); ++i)
        fold_of[static_cast<size_t>(order[i])] = static_cast<int>(i % static_cast<size_t>(folds));

    std::vector<double> cv_count(nl, 0.0);
    for (int f = 0; f < folds; ++f) {
        std::vector<int> train_rows, test_rows;
        for (int i = 0; i < static_cast<int>(n); ++i)
            (fold_of[static_cast<size_t>(i)] == f ? test_rows : train_rows).push_back(i);
        if (test_rows.empty() || train_rows.size() <= 1) continue;

        Eigen::MatrixXd Xtr(train_rows.size(), k), Xte(test_rows.size(), k);
        Eigen::VectorXd ytr(train_rows.size()), yte(test_rows.size());
        for (size_t i = 0; i < train_rows.size(); ++i) {
            Xtr.row(static_cast<Eigen::Index>(i)) = X.row(train_rows[i]);
            ytr(static_cast<Eigen::Index>(i)) = y(train_rows[i]);
        }
        for (size_t i = 0; i < test_rows.size(); ++i) {
            Xte.row(static_cast<Eigen::Index>(i)) = X.row(test_rows[i]);
            yte(static_cast<Eigen::Index>(i)) = y(test_rows[i]);
        }

        Standardized s = standardize(ytr, Xtr);
        Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
        for (size_t li = 0; li < nl; ++li) {
            b = cd_fit(s.Z, s.yc, lambda_grid[li], b);  // warm start down the path
            Eigen::VectorXd coef = b.array() / s.scale.array();
            const double intercept = s.y_mean - coef.dot(s.mean);
            const Eigen::VectorXd pred = (Xte * coef).array() + intercept;
            fit.cv_mse[li] += (pred - yte).squaredNorm();
            cv_count[li] += static_cast<double>(test_rows.size());
        }
    }
    for (size_t li = 0; li < nl; ++li)
        fit.cv_mse[li] = cv_count[li] > 0 ? fit.cv_mse[li] / cv_count[li] : 0.0;

    // Final path on the full sample.
    Standardized s = standardize(y, X);
    for (int j : s.constant_cols)
        fit.warnings.push_back("column " + std::to_string(j) + " is constant; left unpenalized at 0");
    fit.path.resize(k, static_cast<Eigen::Index>(nl));
    fit.intercept_path.resize(static_cast<Eigen::Index>(nl));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(k);
    for (size_t li = 0; li < nl; ++li) {
        b = cd_fit(s.Z, s.yc, lambda_grid[li], b);
        const Eigen::VectorXd coef = b.array() / s.scale.array();
        fit.path.col(static_cast<Eigen::Index>(li)) = coef;
        fit.intercept_path(static_cast<Eigen::Index>(li)) = s.y_mean - coef.dot(s.mean);
    }

    // Smallest CV error; ties go to the larger (sparser) lambda.
    fit.selected = 0;
    for (size_t li = 1; li < nl; ++li)
        if (fit.cv_mse[li] < fit.cv_mse[static_cast<size_t>(fit.selected)]) {
            fit.selected = static_cast<int>(li);
        }
    fit.coef = fit.path.col(fit.selected);
    fit.intercept = fit.intercept_path(fit.selected);
    return fit;
}

}  // namespace dlgrowth::econ
