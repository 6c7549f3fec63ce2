#include "dlgrowth/growth.hpp"

#include <cmath>
#include <sstream>

#include "dlgrowth/errors.hpp"

namespace dlgrowth::growth {

namespace {

void check_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw ValidationError(std::string(name) + " must be finite");
}

}  // namespace

void GrowthParams::validate() const {
    check_finite(alpha, "alpha");
    check_finite(beta, "beta");
    check_finite(gamma, "gamma");
    check_finite(theta, "theta");
    require(alpha > 0.0 && alpha < 1.0, "alpha must lie in (0,1)");
    require(beta >= 0.0, "beta must be >= 0");
    require(gamma >= 0.0, "gamma must be >= 0");
    require(beta + theta < 1.0, "beta + theta must be < 1");
    require(B > 0.0, "B must be > 0");
    // Half-open ranges so the degenerate depletion case (s = 0, delta = 1)
    // can be simulated to its integration-failure report.
    require(s >= 0.0 && s < 1.0, "s must lie in [0,1)");
    require(delta > 0.0 && delta <= 1.0, "delta must lie in (0,1]");
    require(n > 0.0, "n must be > 0");
    require(alpha_k > 0.0 && alpha_k < 1.0, "alpha_k must lie in (0,1)");
    require(alpha_l > 0.0 && alpha_l < 1.0, "alpha_l must lie in (0,1)");
}

void ShockSpec::validate_against(const GrowthParams& params) const {
    check_finite(beta_prime, "beta_prime");
    check_finite(gamma_prime, "gamma_prime");
    require(beta_prime > params.beta, "shock requires beta' > beta");
    require(gamma_prime >= 0.0, "gamma' must be >= 0");
    // Tolerance admits the boundary case delta_beta = -delta_gamma, which
    // plain subtraction can order either way in floating point.
    require(beta_prime - params.beta >= params.gamma - gamma_prime - 1e-12,
            "shock requires beta' - beta >= gamma - gamma'");
    require(beta_prime + params.theta < 1.0, "shock requires beta' + theta < 1");
}

SteadyState steady_state_rates(double beta, double gamma, double theta, double n) {
    require(beta >= 0.0, "beta must be >= 0");
    require(gamma >= 0.0, "gamma must be >= 0");
    require(n > 0.0, "n must be > 0");
    const double denom = 1.0 - beta - theta;
    require(denom > 0.0, "beta + theta must be < 1");
    return SteadyState{(beta + gamma) * n / denom, (1.0 - theta + gamma) * n / denom};
}

SteadyState steady_state(const GrowthParams& params) {
    params.validate();
    return steady_state_rates(params.beta, params.gamma, params.theta, params.n);
}

double capital_cost_share(double beta, double gamma) {
    require(beta >= 0.0 && gamma >= 0.0, "elasticities must be >= 0");
    require(beta + gamma > 0.0, "cost share undefined for beta + gamma = 0");
    return beta / (beta + gamma);
}

double share_to_beta(double share, double gamma) {
    require(share >= 0.0 && share < 1.0, "share must lie in [0,1)");
    require(gamma > 0.0, "gamma must be > 0");
    return share * gamma / (1.0 - share);
}

double project_growth(double share, double gamma, double theta, double n) {
    const double beta = share_to_beta(share, gamma);
    return steady_state_rates(beta, gamma, theta, n).g_a;
}

ShockEffect proposition1_effect(const GrowthParams& params, const ShockSpec& shock) {
    params.validate();
    shock.validate_against(params);
    const SteadyState before = steady_state_rates(params.beta, params.gamma, params.theta, params.n);
    const SteadyState after =
        steady_state_rates(shock.beta_prime, shock.gamma_prime, params.theta, params.n);
    if (!(after.g_a > before.g_a && after.g_k > before.g_k)) {
        std::ostringstream msg;
        msg << "shock did not raise both growth rates (g_a " << before.g_a << " -> " << after.g_a
            << ", g_k " << before.g_k << " -> " << after.g_k << ")";
        throw NumericalError(msg.str());
    }
    return ShockEffect{before.g_a, after.g_a, before.g_k, after.g_k};
}

double ces_marginal_product(double d, double c, double zeta, double eta, double sigma) {
    require(d > 0.0 && c > 0.0, "inputs must be > 0");
    require(zeta > 0.0 && eta > 0.0, "weights must be > 0");
    require(sigma > 0.0, "sigma must be > 0");
    require(sigma != 1.0,
            "sigma = 1 is the Cobb-Douglas limit; use the Cobb-Douglas closed form");
    const double r = (sigma - 1.0) / sigma;
    const double bracket = zeta * std::pow(d, r) + eta * std::pow(c, r);
    // dP/dC for P = bracket^(1/r); the 1/r and r chain factors cancel.
    return eta * std::pow(c, r - 1.0) * std::pow(bracket, 1.0 / r - 1.0);
}

}  // namespace dlgrowth::growth
