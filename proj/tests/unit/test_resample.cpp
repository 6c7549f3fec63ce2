#include <doctest.h>

#include <set>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/inference.hpp"
#include "synth.hpp"

using namespace dlgrowth;
using namespace dlgrowth::inference;

TEST_CASE("n_choose_k") {
    CHECK(n_choose_k(40, 3) == 9880.0);
    CHECK(n_choose_k(5, 0) == 1.0);
    CHECK(n_choose_k(5, 5) == 1.0);
    CHECK(n_choose_k(5, 6) == 0.0);
    CHECK(n_choose_k(96, 5) == doctest::Approx(61124064.0));
}

TEST_CASE("exhaustive leave-k-out visits each index set exactly once") {
    synth::Dgp dgp;
    dgp.n = 40;
    const auto records = synth::make_records(dgp, 60);
    RobustnessConfig cfg;
    cfg.k = 3;
    cfg.seed = 1;

    const LeaveKOutResult result = leave_k_out(records, econ::RegressionSpec{}, cfg);
    CHECK(result.exhaustive);
    CHECK(result.estimates.size() == 9880);  // C(40,3)
    std::set<std::vector<int>> seen(result.removed.begin(), result.removed.end());
    CHECK(seen.size() == 9880);

    SUBCASE("bitwise reproducible under any parallelism") {
        RobustnessConfig threaded = cfg;
        threaded.threads = 3;
        const LeaveKOutResult again = leave_k_out(records, econ::RegressionSpec{}, threaded);
        REQUIRE(again.removed == result.removed);
        for (size_t i = 0; i < result.estimates.size(); ++i)
            for (size_t c = 0; c < result.estimates[i].size(); ++c)
                CHECK(again.estimates[i][c] == result.estimates[i][c]);
    }
    SUBCASE("stable synthetic data keeps the beta IQR small") {
        size_t beta_col = 0;
        for (size_t c = 0; c < result.coef_names.size(); ++c)
            if (result.coef_names[c] == econ::kLogC) beta_col = c;
        const double median = result.medians[beta_col];
        const double iqr = result.iqrs[beta_col];
        CHECK(iqr < 0.2 * std::abs(median));
    }
}

TEST_CASE("sampled leave-k-out draws distinct subsets deterministically") {
    synth::Dgp dgp;
    dgp.n = 30;
    const auto records = synth::make_records(dgp, 61);
    RobustnessConfig cfg;
    cfg.k = 5;
    cfg.max_subsamples = 500;  // far below C(30,5) = 142506
    cfg.seed = 4;

    const LeaveKOutResult result = leave_k_out(records, econ::RegressionSpec{}, cfg);
    CHECK_FALSE(result.exhaustive);
    CHECK(result.estimates.size() == 500);
    std::set<std::vector<int>> seen(result.removed.begin(), result.removed.end());
    CHECK(seen.size() == 500);

    const LeaveKOutResult again = leave_k_out(records, econ::RegressionSpec{}, cfg);
    CHECK(again.removed == result.removed);
}

TEST_CASE("leave-k-out configuration") {
    synth::Dgp dgp;
    dgp.n = 20;
    const auto records = synth::make_records(dgp, 62);
    RobustnessConfig cfg;
    cfg.k = 0;
    CHECK_THROWS_AS(leave_k_out(records, econ::RegressionSpec{}, cfg), ValidationError);
    cfg.k = 20;
    CHECK_THROWS_AS(leave_k_out(records, econ::RegressionSpec{}, cfg), ValidationError);
    cfg.k = 3;
    cfg.mode = RobustnessConfig::Mode::Exhaustive;
    cfg.max_subsamples = 100;  // C(20,3) = 1140 > 100
    CHECK_THROWS_AS(leave_k_out(records, econ::RegressionSpec{}, cfg), ValidationError);
}

TEST_CASE("window sweep") {
    synth::Dgp dgp;
    dgp.n = 300;
    dgp.years = 6;
    const auto records = synth::make_records(dgp, 63);
    econ::RegressionSpec spec;
    spec.estimator = econ::Estimator::OlsRobust;
    const std::vector<int> lengths{6, 12, 18};

    const auto rows = window_sweep(records, spec, lengths);
    REQUIRE(rows.size() == 3);
    for (const auto& row : rows) {
        REQUIRE(row.fit.has_value());
        CHECK(row.error.empty());
    }

    SUBCASE("window=12 row equals the base fit bit for bit") {
        const econ::Design d = econ::build_design(records, spec);
        const econ::FitResult base = econ::fit_design(d, spec.estimator);
        const econ::FitResult& swept = *rows[1].fit;
        REQUIRE(swept.names == base.names);
        for (Eigen::Index j = 0; j < base.coef.size(); ++j)
            CHECK(swept.coef(j) == base.coef(j));
        CHECK(swept.log_likelihood == base.log_likelihood);
    }
    SUBCASE("estimates vary across windows within a few standard errors") {
        const double se = rows[1].fit->se(econ::kLogC);
        for (const auto& row : rows)
            CHECK(std::abs(row.fit->coefficient(econ::kLogC) -
                           rows[1].fit->coefficient(econ::kLogC)) < 3.0 * se);
    }
    SUBCASE("single-period data gives identical estimates across windows") {
        synth::Dgp one;
        one.n = 80;
        one.years = 1;
        const auto recs = synth::make_records(one, 64);
        // Months still differ, so use windows that each cover the full year.
        const std::vector<int> wide{12, 24, 36};
        const auto swept = window_sweep(recs, spec, wide);
        for (const auto& row : swept) {
            REQUIRE(row.fit.has_value());
            CHECK(row.fit->coefficient(econ::kLogC) ==
                  doctest::Approx(swept[0].fit->coefficient(econ::kLogC)).epsilon(1e-12));
        }
    }
    SUBCASE("per-window failures are recorded and the sweep continues") {
        synth::Dgp tiny;
        tiny.n = 6;
        const auto recs = synth::make_records(tiny, 65);
        const std::vector<int> lengths2{1, 12};  // 1-month windows oversaturate n=6
        const auto swept = window_sweep(recs, spec, lengths2);
        REQUIRE(swept.size() == 2);
        CHECK_FALSE(swept[0].fit.has_value());
        CHECK_FALSE(swept[0].error.empty());
    }
}
