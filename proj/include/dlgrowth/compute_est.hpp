#pragma once

#include <optional>
#include <span>

namespace dlgrowth::compute_est {

// Operation-counting inputs: FLOP per forward pass and the number of
// training passes. Examples may be given directly or as batches x batch_size.
struct ArchitectureCount {
    double forward_flop = 0.0;
    double epochs = 0.0;
    std::optional<double> examples;
    std::optional<double> batches;
    std::optional<double> batch_size;

    void validate() const;
    double resolved_examples() const;
};

// Hardware-time inputs. Utilization defaults to 0.3 when absent.
struct HardwareCount {
    double training_seconds = 0.0;
    double cores = 0.0;
    double peak_flops = 0.0;
    std::optional<double> utilization;

    void validate() const;
};

// 3 x forward_flop x epochs x examples (forward + backward passes cost
// roughly three forward passes).
double estimate_method1(const ArchitectureCount& arch);

// training_seconds x cores x peak_flops x utilization.
double estimate_method2(const HardwareCount& hw);

enum class MeanMode { Geometric, Arithmetic };

struct Reconciled {
    double value = 0.0;
    double spread = 1.0;  // max/min ratio of the inputs
    bool spread_warning = false;
};

// Combines per-method estimates. Geometric by default since training compute
// spans orders of magnitude; arithmetic mode available for exact parity with
// plain averaging. Warns (never aborts) when the spread exceeds 10x.
Reconciled reconcile(std::span<const double> estimates, MeanMode mode = MeanMode::Geometric);

}  // namespace dlgrowth::compute_est
