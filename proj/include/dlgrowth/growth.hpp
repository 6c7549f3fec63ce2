#pragma once

namespace dlgrowth::growth {

// Parameters of the two-sector economy: Cobb-Douglas goods production with
// capital elasticity alpha, an idea production function with elasticities
// (beta, gamma, theta) and shift B, constant saving rate s, depreciation
// delta, population growth n, and exogenous R&D allocation fractions
// (alpha_k, alpha_l).
struct GrowthParams {
    double alpha = 0.33;
    double beta = 0.15;
    double gamma = 0.4;
    double theta = 0.5;
    double B = 1.0;
    double s = 0.2;
    double delta = 0.05;
    double n = 0.01;
    double alpha_k = 0.1;
    double alpha_l = 0.1;

    // Strict validation; rejects rather than clamps. beta + theta < 1 keeps
    // returns to ideas diminishing and the steady state well defined.
    void validate() const;
};

struct SteadyState {
    double g_a = 0.0;  // steady-state idea growth rate
    double g_k = 0.0;  // steady-state capital growth rate
};

// Permanent shift of the R&D elasticities to (beta_prime, gamma_prime).
struct ShockSpec {
    double beta_prime = 0.0;
    double gamma_prime = 0.0;

    // beta' > beta, beta' - beta >= gamma - gamma', beta' + theta < 1.
    void validate_against(const GrowthParams& params) const;
};

struct ShockEffect {
    double g_a_before = 0.0;
    double g_a_after = 0.0;
    double g_k_before = 0.0;
    double g_k_after = 0.0;
};

// g_a* = (beta+gamma) n / (1-beta-theta), g_k* = (1-theta+gamma) n / (1-beta-theta).
SteadyState steady_state(const GrowthParams& params);

// Same formulas without requiring a full parameter vector; used for the
// projection chain where only (beta, gamma, theta, n) matter.
SteadyState steady_state_rates(double beta, double gamma, double theta, double n);

// Competitive-sector capital cost share beta / (beta + gamma).
double capital_cost_share(double beta, double gamma);

// Inverse of capital_cost_share at fixed gamma: beta = share*gamma/(1-share).
double share_to_beta(double share, double gamma);

// Steady-state idea growth as a function of the capital cost share; the
// curve of the projection figures.
double project_growth(double share, double gamma, double theta, double n);

// Before/after steady states for a permanent elasticity shock. Both rates
// strictly increase under the ShockSpec conditions; asserted here.
ShockEffect proposition1_effect(const GrowthParams& params, const ShockSpec& shock);

// Marginal product of compute for the CES performance function
// P = [zeta*D^r + eta*C^r]^(1/r), r = (sigma-1)/sigma. sigma == 1 is the
// Cobb-Douglas limit and must be handled by the caller's separate branch.
double ces_marginal_product(double d, double c, double zeta, double eta, double sigma);

}  // namespace dlgrowth::growth
