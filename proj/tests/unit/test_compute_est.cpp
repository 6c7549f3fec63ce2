#include <doctest.h>

#include <vector>

#include "dlgrowth/compute_est.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/rng.hpp"

using namespace dlgrowth;
using namespace dlgrowth::compute_est;

TEST_CASE("operation-counting method") {
    ArchitectureCount arch;
    arch.forward_flop = 2e9;
    arch.epochs = 90;
    arch.examples = 1.28e6;
    CHECK(estimate_method1(arch) == 6.912e17);  // bit-exact worked example

    SUBCASE("unit case exposes the 3x forward/backward factor") {
        ArchitectureCount unit;
        unit.forward_flop = 1;
        unit.epochs = 1;
        unit.examples = 1;
        CHECK(estimate_method1(unit) == 3.0);
    }
    SUBCASE("examples from batches x batch_size") {
        ArchitectureCount batched;
        batched.forward_flop = 1;
        batched.epochs = 1;
        batched.batches = 100;
        batched.batch_size = 256;
        CHECK(estimate_method1(batched) == 3.0 * 25600);
    }
    SUBCASE("inconsistent examples rejected") {
        ArchitectureCount bad = arch;
        bad.batches = 100;
        bad.batch_size = 999;
        CHECK_THROWS_AS(estimate_method1(bad), ValidationError);
    }
    SUBCASE("nonpositive fields rejected") {
        ArchitectureCount bad = arch;
        bad.epochs = 0;
        CHECK_THROWS_AS(estimate_method1(bad), ValidationError);
    }
}

TEST_CASE("hardware-time method") {
    HardwareCount hw;
    hw.training_seconds = 172800;
    hw.cores = 5;
    hw.peak_flops = 1e13;
    hw.utilization = 0.3;
    CHECK(estimate_method2(hw) == 2.592e18);  // bit-exact worked example

    SUBCASE("full utilization unit case") {
        HardwareCount unit;
        unit.training_seconds = 1;
        unit.cores = 1;
        unit.peak_flops = 1;
        unit.utilization = 1.0;
        CHECK(estimate_method2(unit) == 1.0);
    }
    SUBCASE("utilization defaults to 0.3") {
        HardwareCount defaulted = hw;
        defaulted.utilization.reset();
        CHECK(estimate_method2(defaulted) == estimate_method2(hw));
    }
    SUBCASE("utilization above 1 rejected") {
        HardwareCount bad = hw;
        bad.utilization = 1.5;
        CHECK_THROWS_AS(estimate_method2(bad), ValidationError);
    }
}

TEST_CASE("both methods are degree-one homogeneous in each field") {
    Rng rng(321);
    for (int i = 0; i < 500; ++i) {
        ArchitectureCount arch;
        arch.forward_flop = rng.uniform(1e6, 1e12);
        arch.epochs = rng.uniform(1, 200);
        arch.examples = rng.uniform(1e3, 1e7);
        const double base = estimate_method1(arch);
        const double factor = rng.uniform(1.1, 7.0);

        ArchitectureCount scaled = arch;
        scaled.forward_flop *= factor;
        CHECK(estimate_method1(scaled) == doctest::Approx(factor * base).epsilon(1e-12));
        scaled = arch;
        scaled.epochs *= factor;
        CHECK(estimate_method1(scaled) == doctest::Approx(factor * base).epsilon(1e-12));

        HardwareCount hw;
        hw.training_seconds = rng.uniform(60, 1e6);
        hw.cores = rng.uniform(1, 512);
        hw.peak_flops = rng.uniform(1e12, 1e14);
        hw.utilization = rng.uniform(0.05, 1.0);
        const double base2 = estimate_method2(hw);
        HardwareCount scaled2 = hw;
        scaled2.cores *= factor;
        CHECK(estimate_method2(scaled2) == doctest::Approx(factor * base2).epsilon(1e-12));
    }
}

TEST_CASE("reconciliation") {
    SUBCASE("single estimate is returned unchanged") {
        const std::vector<double> one{3.14e18};
        CHECK(reconcile(one).value == 3.14e18);
    }
    SUBCASE("geometric mean of two") {
        const std::vector<double> two{1e18, 4e18};
        const Reconciled r = reconcile(two);
        CHECK(r.value == doctest::Approx(2e18).epsilon(1e-12));
        CHECK(r.spread == doctest::Approx(4.0).epsilon(1e-12));
        CHECK_FALSE(r.spread_warning);
    }
    SUBCASE("arithmetic mode") {
        const std::vector<double> two{1e18, 4e18};
        CHECK(reconcile(two, MeanMode::Arithmetic).value ==
              doctest::Approx(2.5e18).epsilon(1e-12));
    }
    SUBCASE("order-of-magnitude disagreement warns but does not abort") {
        const std::vector<double> wide{1e18, 1e22};
        const Reconciled r = reconcile(wide);
        CHECK(r.spread_warning);
        CHECK(r.spread == doctest::Approx(1e4).epsilon(1e-9));
    }
    SUBCASE("result lies between min and max") {
        Rng rng(17);
        for (int i = 0; i < 300; ++i) {
            std::vector<double> estimates;
            for (int j = 0; j < 4; ++j) estimates.push_back(rng.uniform(1e15, 1e21));
            const double lo = *std::min_element(estimates.begin(), estimates.end());
            const double hi = *std::max_element(estimates.begin(), estimates.end());
            for (MeanMode mode : {MeanMode::Geometric, MeanMode::Arithmetic}) {
                const double value = reconcile(estimates, mode).value;
                CHECK(value >= lo * (1 - 1e-12));
                CHECK(value <= hi * (1 + 1e-12));
            }
        }
    }
    SUBCASE("empty input rejected") {
        CHECK_THROWS_AS(reconcile(std::vector<double>{}), ValidationError);
    }
}
