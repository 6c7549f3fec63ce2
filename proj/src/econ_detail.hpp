#pragma once

#include <Eigen/Dense>
#include <sstream>
#include <string>
#include <vector>

#include "dlgrowth/errors.hpp"

namespace dlgrowth::econ::detail {

// Relative pivot threshold for declaring a column collinear.
constexpr double kRankTol = 1e-10;

inline void check_shapes(const Eigen::VectorXd& y, const Eigen::MatrixXd& X) {
    require(y.size() == X.rows(), "y and X row counts differ");
    require(X.rows() > X.cols(), "need n > k observations");
    require(X.cols() >= 1, "design has no columns");
}

inline Eigen::ColPivHouseholderQR<Eigen::MatrixXd> rank_checked_qr(
    const Eigen::MatrixXd& X, const std::vector<std::string>* names) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    qr.setThreshold(kRankTol);
    if (qr.rank() < X.cols()) {
        std::ostringstream msg;
        msg << "design matrix is rank deficient (rank " << qr.rank() << " of " << X.cols() << ")";
        if (names) {
            msg << "; dependent column(s):";
            const auto& perm = qr.colsPermutation().indices();
            for (Eigen::Index i = qr.rank(); i < X.cols(); ++i)
                msg << ' ' << (*names)[static_cast<size_t>(perm(i))];
        }
        throw ValidationError(msg.str());
    }
    return qr;
}

}  // namespace dlgrowth::econ::detail
