#include <doctest.h>

#include <algorithm>

#include "dlgrowth/econ.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/rng.hpp"
#include "synth.hpp"

using namespace dlgrowth;
using namespace dlgrowth::econ;

namespace {

ExperimentRecord record(const std::string& task, const std::string& date, double gtilde) {
    ExperimentRecord r;
    r.task = task;
    r.date = parse_iso_date(date);
    r.gtilde = gtilde;
    r.log_compute = 40.0;
    r.log_human_capital = 3.0;
    return r;
}

}  // namespace

TEST_CASE("window indexing rule") {
    CHECK(period_index(parse_iso_date("2012-01-15"), 12) == 0);
    CHECK(period_index(parse_iso_date("2012-12-31"), 12) == 0);
    CHECK(period_index(parse_iso_date("2013-01-01"), 12) == 1);
    // floor(months since 2012-01 / 6): 2014-06 -> 29/6 = 4, 2014-07 -> 5.
    CHECK(period_index(parse_iso_date("2014-06-20"), 6) == 4);
    CHECK(period_index(parse_iso_date("2014-07-02"), 6) == 5);
    CHECK(period_index(parse_iso_date("2011-12-31"), 12) == -1);
}

TEST_CASE("build_design columns") {
    SUBCASE("single task, one year, one dummy") {
        RegressionSpec spec;
        std::vector<ExperimentRecord> records{record("t", "2015-03-01", 0.5),
                                              record("t", "2015-08-01", 0.4),
                                              record("t", "2015-11-11", 0.3)};
        const Design d = build_design(records, spec);
        CHECK(d.n_dummies == 1);
        CHECK(d.k() == 5);  // dummy + logS + logC + extra + reimpl
        CHECK(d.names[0] == "fe[p=3]");
        CHECK(d.X.col(0).sum() == doctest::Approx(3.0));
    }
    SUBCASE("two adjacent months under a 6-month window get two dummies") {
        RegressionSpec spec;
        spec.window_months = 6;
        std::vector<ExperimentRecord> records{record("t", "2014-06-15", 0.5),
                                              record("t", "2014-07-15", 0.4)};
        const Design d = build_design(records, spec);
        CHECK(d.n_dummies == 2);
        CHECK(d.names[0] == "fe[p=4]");
        CHECK(d.names[1] == "fe[p=5]");
        // Singleton periods are flagged, not fatal.
        CHECK(d.warnings.size() == 2);
    }
    SUBCASE("pooled mode uses task-specific period dummies") {
        RegressionSpec pooled;
        pooled.pooled = true;
        std::vector<ExperimentRecord> records{record("a", "2015-03-01", 0.5),
                                              record("b", "2015-08-01", 0.4)};
        const Design d = build_design(records, pooled);
        CHECK(d.n_dummies == 2);
        CHECK(d.names[0] == "fe[a,p=3]");
        CHECK(d.names[1] == "fe[b,p=3]");
    }
    SUBCASE("gtilde <= 0 rows are excluded with a warning") {
        RegressionSpec spec;
        std::vector<ExperimentRecord> records{record("t", "2015-03-01", 0.5),
                                              record("t", "2015-04-01", 0.0),
                                              record("t", "2015-05-01", -0.2)};
        const Design d = build_design(records, spec);
        CHECK(d.n() == 1);
        REQUIRE(!d.warnings.empty());
        CHECK(d.warnings.front().find("gtilde <= 0") != std::string::npos);
    }
    SUBCASE("trend column is fractional years since 2012-01-01") {
        RegressionSpec with_trend;
        with_trend.include_trend = true;
        std::vector<ExperimentRecord> records{record("t", "2013-01-01", 0.5),
                                              record("t", "2013-07-01", 0.4)};
        const Design d = build_design(records, with_trend);
        REQUIRE(d.col_trend >= 0);
        CHECK(d.X(0, d.col_trend) == doctest::Approx(366.0 / 365.25));
    }
}

TEST_CASE("build_design is order-independent") {
    synth::Dgp dgp;
    dgp.n = 80;
    dgp.tasks = {"a", "b"};
    auto records = synth::make_records(dgp, 42);
    RegressionSpec spec;
    spec.pooled = true;

    const Design d1 = build_design(records, spec);
    const Eigen::VectorXd coef1 = ols_coefficients(d1.y, d1.X);

    std::vector<ExperimentRecord> shuffled = records;
    Rng rng(9);
    rng.shuffle(shuffled);
    const Design d2 = build_design(shuffled, spec);
    const Eigen::VectorXd coef2 = ols_coefficients(d2.y, d2.X);

    REQUIRE(d1.names == d2.names);
    for (Eigen::Index j = 0; j < coef1.size(); ++j)
        CHECK(coef1(j) == doctest::Approx(coef2(j)).epsilon(1e-10));
}
