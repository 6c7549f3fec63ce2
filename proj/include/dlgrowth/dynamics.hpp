#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dlgrowth/growth.hpp"

namespace dlgrowth::dynamics {

struct EconomyState {
    double t = 0.0;
    double capital = 1.0;
    double labour = 1.0;
    double ideas = 1.0;

    void validate() const;
};

// Output from the goods sector at this state (never stored; recomputed).
double output(const growth::GrowthParams& params, const EconomyState& state);

struct TrajectoryPoint {
    double t;
    double capital;
    double labour;
    double ideas;
    double output;
    double g_a;  // instantaneous idea growth rate
    double g_k;  // instantaneous capital growth rate
};

struct Trajectory {
    std::vector<TrajectoryPoint> points;
    // Set when integration stopped early (state underflow/overflow); points
    // then end at the last valid state.
    std::optional<std::string> failure;

    bool ok() const { return !failure.has_value(); }
    const TrajectoryPoint& back() const { return points.back(); }
    void write_csv(std::ostream& out) const;
};

// A state on the balanced growth path (growth rates at their steady-state
// values from t = 0), normalized to the given labour stock.
EconomyState bgp_state(const growth::GrowthParams& params, double labour = 1.0);

// Classic fourth-order fixed-step integration of (K, L, A). Every stride-th
// step is recorded (plus the final one).
Trajectory simulate(const growth::GrowthParams& params, const EconomyState& init,
                    double horizon, double step, int stride = 1);

// Starts on the pre-shock balanced growth path, switches the R&D
// elasticities to the shocked values at t_shock, and integrates to horizon.
Trajectory shock_experiment(const growth::GrowthParams& params, const growth::ShockSpec& shock,
                            double t_shock, double horizon, double step, int stride = 1);

// Compute path C(t) with a multiplicative scale knob.
class ComputePath {
public:
    static ComputePath constant(double level);
    static ComputePath exponential(double level0, double rate);
    static ComputePath tabulated(std::vector<double> times, std::vector<double> levels);

    double operator()(double t) const;
    double scale() const { return scale_; }
    ComputePath scaled(double factor) const;

private:
    enum class Kind { Constant, Exponential, Tabulated };
    Kind kind_ = Kind::Constant;
    double level_ = 1.0;
    double rate_ = 0.0;
    std::vector<double> times_;
    std::vector<double> levels_;
    double scale_ = 1.0;
};

struct ScalingFit {
    // Least-squares slope of log(error) against log(scale), averaged over
    // the final third of the horizon.
    double exponent = 0.0;
    std::vector<double> scales;
    std::vector<double> final_errors;  // error at the horizon per scale
};

// Integrates da/dt = a^theta (m C(t))^beta for each scale factor m, maps the
// idea level to an error rate E = 1/(1+a), and fits the error-vs-scale
// power law. Needs at least two distinct scales.
ScalingFit scaling_experiment(double theta, double beta, const ComputePath& path,
                              const std::vector<double>& scales, double horizon = 80.0,
                              double step = 0.01, double a0 = 0.1);

}  // namespace dlgrowth::dynamics
