// Closed-form growth results: steady states, cost shares, shock comparative
// statics, projections, and the CES marginal product against a
// finite-difference oracle.

#include <doctest.h>

#include <cmath>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/growth.hpp"
#include "dlgrowth/rng.hpp"

using namespace dlgrowth;
using namespace dlgrowth::growth;

namespace {

GrowthParams params_with(double beta, double gamma, double theta, double n) {
    GrowthParams p;
    p.beta = beta;
    p.gamma = gamma;
    p.theta = theta;
    p.n = n;
    return p;
}

// P(D, C) from the CES performance function; the oracle for the marginal
// product below.
double ces_performance(double d, double c, double zeta, double eta, double sigma) {
    const double r = (sigma - 1.0) / sigma;
    return std::pow(zeta * std::pow(d, r) + eta * std::pow(c, r), 1.0 / r);
}

double central_diff_dc(double d, double c, double zeta, double eta, double sigma) {
    const double h = 1e-6 * c;
    return (ces_performance(d, c + h, zeta, eta, sigma) -
            ces_performance(d, c - h, zeta, eta, sigma)) /
           (2.0 * h);
}

}  // namespace

TEST_CASE("steady state matches the closed form") {
    SUBCASE("beta = 0 collapses to gamma n / (1 - theta)") {
        const SteadyState ss = steady_state(params_with(0.0, 0.4, 0.5, 0.01));
        CHECK(ss.g_a == doctest::Approx(0.008).epsilon(1e-12));
        CHECK(ss.g_k == doctest::Approx(0.018).epsilon(1e-12));
    }
    SUBCASE("beta = 0.1") {
        const SteadyState ss = steady_state(params_with(0.1, 0.4, 0.5, 0.01));
        CHECK(ss.g_a == doctest::Approx(0.0125).epsilon(1e-12));
        CHECK(ss.g_k == doctest::Approx(0.0225).epsilon(1e-12));
    }
    SUBCASE("beta = 0.2") {
        const SteadyState ss = steady_state(params_with(0.2, 0.4, 0.5, 0.01));
        CHECK(ss.g_a == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(ss.g_k == doctest::Approx(0.03).epsilon(1e-12));
    }
    SUBCASE("beta + theta >= 1 rejected") {
        CHECK_THROWS_AS(steady_state(params_with(0.5, 0.4, 0.5, 0.01)), ValidationError);
    }
}

TEST_CASE("g_k - g_a = n identity holds across random valid parameters") {
    Rng rng(1234);
    for (int i = 0; i < 1000; ++i) {
        const double beta = rng.uniform(0.0, 0.4);
        const double gamma = rng.uniform(0.05, 0.6);
        const double theta = rng.uniform(-0.2, 0.55);
        if (beta + theta >= 0.95) continue;
        const double n = rng.uniform(0.001, 0.05);
        const SteadyState ss = steady_state_rates(beta, gamma, theta, n);
        CHECK(std::abs(ss.g_k - ss.g_a - n) <= 1e-12 * n);
    }
}

TEST_CASE("capital cost share") {
    CHECK(capital_cost_share(0.145, 0.278) == doctest::Approx(0.343).epsilon(1e-3));
    CHECK(capital_cost_share(0.176, 0.298) == doctest::Approx(0.371).epsilon(1e-3));
    CHECK(capital_cost_share(0.3, 0.3) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK_THROWS_AS(capital_cost_share(0.0, 0.0), ValidationError);
}

TEST_CASE("share_to_beta inverts the cost share") {
    CHECK(share_to_beta(0.0, 0.4) == doctest::Approx(0.0));
    CHECK(share_to_beta(0.5, 0.4) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(share_to_beta(0.371, 0.4) == doctest::Approx(0.2360).epsilon(1e-4));
    CHECK_THROWS_AS(share_to_beta(1.0, 0.4), ValidationError);

    Rng rng(99);
    for (int i = 0; i < 1000; ++i) {
        const double beta = rng.uniform(0.001, 0.5);
        const double gamma = rng.uniform(0.05, 0.6);
        const double share = capital_cost_share(beta, gamma);
        CHECK(share_to_beta(share, gamma) == doctest::Approx(beta).epsilon(1e-12));
    }
}

TEST_CASE("projection chain reproduces the pooled-share growth rates") {
    CHECK(project_growth(0.371, 0.4, 0.5, 0.01) == doctest::Approx(0.0241).epsilon(2e-3));
    CHECK(project_growth(0.343, 0.4, 0.5, 0.01) == doctest::Approx(0.0209).epsilon(2e-3));
    CHECK(project_growth(0.0, 0.4, 0.5, 0.01) == doctest::Approx(0.008).epsilon(1e-12));

    // Strictly increasing in the share.
    double prev = -1.0;
    for (double share = 0.0; share < 0.55; share += 0.01) {
        const double g = project_growth(share, 0.4, 0.5, 0.01);
        CHECK(g > prev);
        prev = g;
    }
}

TEST_CASE("proposition 1 comparative statics") {
    GrowthParams params = params_with(0.1, 0.4, 0.5, 0.01);

    SUBCASE("pure beta increase") {
        const ShockEffect effect = proposition1_effect(params, ShockSpec{0.2, 0.4});
        CHECK(effect.g_a_before == doctest::Approx(0.0125).epsilon(1e-12));
        CHECK(effect.g_a_after == doctest::Approx(0.02).epsilon(1e-12));
        CHECK(effect.g_k_after > effect.g_k_before);
    }
    SUBCASE("offsetting gamma decrease") {
        const ShockEffect effect = proposition1_effect(params, ShockSpec{0.15, 0.35});
        CHECK(effect.g_a_after == doctest::Approx(0.5 * 0.01 / 0.35).epsilon(1e-12));
        CHECK(effect.g_a_after > effect.g_a_before);
    }
    SUBCASE("no-op shock rejected") {
        CHECK_THROWS_AS(proposition1_effect(params, ShockSpec{0.1, 0.4}), ValidationError);
    }
    SUBCASE("excessive gamma loss rejected") {
        CHECK_THROWS_AS(proposition1_effect(params, ShockSpec{0.15, 0.30}), ValidationError);
    }
}

TEST_CASE("proposition 1 property: both rates strictly increase") {
    Rng rng(0x42);
    int tested = 0;
    while (tested < 2000) {
        GrowthParams p = params_with(rng.uniform(0.0, 0.3), rng.uniform(0.05, 0.5),
                                     rng.uniform(0.0, 0.6), rng.uniform(0.002, 0.04));
        if (p.beta + p.theta >= 0.9) continue;
        ShockSpec shock;
        shock.beta_prime = p.beta + rng.uniform(0.01, 0.25);
        if (shock.beta_prime + p.theta >= 0.95) continue;
        const double max_drop = shock.beta_prime - p.beta;
        shock.gamma_prime = p.gamma - rng.uniform(0.0, std::min(max_drop, p.gamma));
        const ShockEffect effect = proposition1_effect(p, shock);
        CHECK(effect.g_a_after > effect.g_a_before);
        CHECK(effect.g_k_after > effect.g_k_before);
        ++tested;
    }
}

TEST_CASE("CES marginal product of compute") {
    SUBCASE("matches central finite differences of the CES performance") {
        Rng rng(7);
        for (int i = 0; i < 500; ++i) {
            const double d = rng.uniform(0.2, 5.0);
            const double c = rng.uniform(0.2, 5.0);
            const double zeta = rng.uniform(0.2, 2.0);
            const double eta = rng.uniform(0.2, 2.0);
            double sigma = rng.uniform(0.3, 2.0);
            if (std::abs(sigma - 1.0) < 0.05) sigma = 1.2;
            const double mp = ces_marginal_product(d, c, zeta, eta, sigma);
            const double fd = central_diff_dc(d, c, zeta, eta, sigma);
            CHECK(mp == doctest::Approx(fd).epsilon(1e-6));
        }
    }
    SUBCASE("symmetric point, sigma = 1/2") {
        // Frozen from the finite-difference oracle of the performance
        // function: at D=C=1, zeta=eta=1, sigma=0.5 the bracket is 2 and
        // dP/dC = 2^(1/r - 1) with r = -1, i.e. 0.25.
        const double mp = ces_marginal_product(1.0, 1.0, 1.0, 1.0, 0.5);
        CHECK(mp == doctest::Approx(0.25).epsilon(1e-12));
        CHECK(mp == doctest::Approx(central_diff_dc(1.0, 1.0, 1.0, 1.0, 0.5)).epsilon(1e-8));
    }
    SUBCASE("gross complements: more data raises the marginal product") {
        const double low = ces_marginal_product(0.5, 1.0, 1.0, 1.0, 0.5);
        const double high = ces_marginal_product(2.0, 1.0, 1.0, 1.0, 0.5);
        CHECK(low <= high);
    }
    SUBCASE("symmetry in the arguments") {
        const double dp_dc = ces_marginal_product(1.7, 1.7, 0.8, 0.8, 0.7);
        const double dp_dd = ces_marginal_product(1.7, 1.7, 0.8, 0.8, 0.7);  // by symmetry
        CHECK(dp_dc == doctest::Approx(dp_dd).epsilon(1e-14));
    }
    SUBCASE("sigma = 1 must use the Cobb-Douglas branch") {
        CHECK_THROWS_AS(ces_marginal_product(1.0, 1.0, 1.0, 1.0, 1.0), ValidationError);
    }
}
