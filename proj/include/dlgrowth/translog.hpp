#pragma once

#include <span>
#include <string>
#include <vector>

#include "dlgrowth/econ.hpp"

namespace dlgrowth::econ {

struct TranslogResult {
    FitResult fit;        // least-squares fit including the curvature column
    double rho = 0.0;     // (sigma-1)/sigma recovered from the curvature
    double sigma = 1.0;   // elasticity of substitution 1/(1-rho)
    bool sigma_defined = true;
    std::vector<std::string> flags;
};

// Fits the translog approximation of the CES idea production function: the
// base specification plus the 1/2 (log S - log C)^2 column. The curvature
// coefficient equals rho * gammahat * betahat, so rho = delta/(gammahat betahat)
// and sigma = 1/(1-rho). sigma is reported undefined when gammahat betahat <= 0
// or rho is at its pole.
TranslogResult translog_sigma(std::span<const ExperimentRecord> records,
                              const RegressionSpec& spec);

}  // namespace dlgrowth::econ
