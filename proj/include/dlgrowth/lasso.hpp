#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

namespace dlgrowth::econ {

struct LassoFit {
    std::vector<double> lambdas;     // sorted descending
    Eigen::MatrixXd path;            // k x nlambda, original scale
    Eigen::VectorXd intercept_path;  // nlambda
    std::vector<double> cv_mse;      // mean held-out MSE per lambda
    int selected = 0;                // index of the CV-selected lambda
    Eigen::VectorXd coef;            // coefficients at the selected lambda
    double intercept = 0.0;
    std::vector<std::string> warnings;
};

// L1-penalized least squares, (1/2n)||y - b0 - Xb||^2 + lambda ||b||_1.
// Columns are z-scored internally and the intercept is unpenalized; cyclic
// coordinate descent with soft-thresholding runs to duality gap 1e-7, and
// lambda is picked by 5-fold cross-validation (fold split derived from seed).
LassoFit lasso(const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
               std::vector<double> lambda_grid, int folds = 5, uint64_t seed = 0);

}  // namespace dlgrowth::econ
