#include "dlgrowth/compute_est.hpp"

#include <algorithm>
#include <cmath>

#include "dlgrowth/errors.hpp"

namespace dlgrowth::compute_est {

void ArchitectureCount::validate() const {
    require(std::isfinite(forward_flop) && forward_flop > 0.0, "forward_flop must be > 0");
    require(std::isfinite(epochs) && epochs > 0.0, "epochs must be > 0");
    require(examples.has_value() || (batches.has_value() && batch_size.has_value()),
            "need examples, or batches together with batch_size");
    if (examples) require(std::isfinite(*examples) && *examples > 0.0, "examples must be > 0");
    if (batches) require(std::isfinite(*batches) && *batches > 0.0, "batches must be > 0");
    if (batch_size)
        require(std::isfinite(*batch_size) && *batch_size > 0.0, "batch_size must be > 0");
    if (examples && batches && batch_size) {
        const double derived = *batches * *batch_size;
        require(std::abs(derived - *examples) <= 1e-9 * std::max(derived, *examples),
                "examples must equal batches x batch_size when both are supplied");
    }
}

double ArchitectureCount::resolved_examples() const {
    if (examples) return *examples;
    return *batches * *batch_size;
}

void HardwareCount::validate() const {
    require(std::isfinite(training_seconds) && training_seconds > 0.0,
            "training_seconds must be > 0");
    require(std::isfinite(cores) && cores > 0.0, "cores must be > 0");
    require(std::isfinite(peak_flops) && peak_flops > 0.0, "peak_flops must be > 0");
    if (utilization)
        require(std::isfinite(*utilization) && *utilization > 0.0 && *utilization <= 1.0,
                "utilization must lie in (0,1]");
}

double estimate_method1(const ArchitectureCount& arch) {
    arch.validate();
    return 3.0 * arch.forward_flop * arch.epochs * arch.resolved_examples();
}

double estimate_method2(const HardwareCount& hw) {
    hw.validate();
    const double utilization = hw.utilization.value_or(0.3);
    return hw.training_seconds * hw.cores * hw.peak_flops * utilization;
}

Reconciled reconcile(std::span<const double> estimates, MeanMode mode) {
    require(!estimates.empty(), "reconcile needs at least one estimate");
    for (double v : estimates)
        require(std::isfinite(v) && v > 0.0, "estimates must be > 0");

    Reconciled out;
    if (estimates.size() == 1) {
        out.value = estimates[0];
        return out;
    }
    if (mode == MeanMode::Geometric) {
        double log_sum = 0.0;
        for (double v : estimates) log_sum += std::log(v);
        out.value = std::exp(log_sum / static_cast<double>(estimates.size()));
    } else {
        double sum = 0.0;
        for (double v : estimates) sum += v;
        out.value = sum / static_cast<double>(estimates.size());
    }
    const auto [lo, hi] = std::minmax_element(estimates.begin(), estimates.end());
    out.spread = *hi / *lo;
    out.spread_warning = out.spread > 10.0;
    return out;
}

}  // namespace dlgrowth::compute_est
