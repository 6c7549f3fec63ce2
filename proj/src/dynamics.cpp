#include "dlgrowth/dynamics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <ostream>

#include "dlgrowth/csv.hpp"
#include "dlgrowth/errors.hpp"

namespace dlgrowth::dynamics {

namespace {

constexpr double kStateFloor = 1e-100;

struct Derivs {
    double dK, dL, dA;
};

struct Coefficients {
    double c_k;  // s (1-alpha_k)^alpha (1-alpha_l)^(1-alpha)
    double c_a;  // B alpha_k^beta alpha_l^gamma
};

Coefficients coefficients(const growth::GrowthParams& p) {
    return {p.s * std::pow(1.0 - p.alpha_k, p.alpha) * std::pow(1.0 - p.alpha_l, 1.0 - p.alpha),
            p.B * std::pow(p.alpha_k, p.beta) * std::pow(p.alpha_l, p.gamma)};
}

Derivs rhs(const growth::GrowthParams& p, double K, double L, double A) {
    const double Y = std::pow((1.0 - p.alpha_k) * K, p.alpha) *
                     std::pow(A * (1.0 - p.alpha_l) * L, 1.0 - p.alpha);
    return {p.s * Y - p.delta * K, p.n * L,
            p.B * std::pow(p.alpha_k * K, p.beta) * std::pow(p.alpha_l * L, p.gamma) *
                std::pow(A, p.theta)};
}

bool bad(double v) { return !std::isfinite(v) || v <= kStateFloor; }

TrajectoryPoint make_point(const growth::GrowthParams& p, const Coefficients& c, double t,
                           double K, double L, double A) {
    const double Y = std::pow((1.0 - p.alpha_k) * K, p.alpha) *
                     std::pow(A * (1.0 - p.alpha_l) * L, 1.0 - p.alpha);
    const double g_a = c.c_a * std::pow(K, p.beta) * std::pow(L, p.gamma) * std::pow(A, p.theta - 1.0);
    const double g_k = c.c_k * std::pow(A * L / K, 1.0 - p.alpha) - p.delta;
    return {t, K, L, A, Y, g_a, g_k};
}

// One classic RK4 step of the coupled system.
void rk4_step(const growth::GrowthParams& p, double h, double& K, double& L, double& A) {
    const Derivs k1 = rhs(p, K, L, A);
    const Derivs k2 = rhs(p, K + 0.5 * h * k1.dK, L + 0.5 * h * k1.dL, A + 0.5 * h * k1.dA);
    const Derivs k3 = rhs(p, K + 0.5 * h * k2.dK, L + 0.5 * h * k2.dL, A + 0.5 * h * k2.dA);
    const Derivs k4 = rhs(p, K + h * k3.dK, L + h * k3.dL, A + h * k3.dA);
    K += h / 6.0 * (k1.dK + 2.0 * k2.dK + 2.0 * k3.dK + k4.dK);
    L += h / 6.0 * (k1.dL + 2.0 * k2.dL + 2.0 * k3.dL + k4.dL);
    A += h / 6.0 * (k1.dA + 2.0 * k2.dA + 2.0 * k3.dA + k4.dA);
}

void integrate_into(Trajectory& traj, const growth::GrowthParams& params, double t0, double K,
                    double L, double A, double horizon, double step, int stride,
                    bool record_first) {
    const Coefficients c = coefficients(params);
    const auto steps = static_cast<long>(std::llround((horizon - t0) / step));
    require(steps >= 1, "horizon must allow at least one step");
    if (record_first) traj.points.push_back(make_point(params, c, t0, K, L, A));
    for (long i = 1; i <= steps; ++i) {
        rk4_step(params, step, K, L, A);
        if (bad(K) || bad(L) || bad(A)) {
            traj.failure = "state left the positive domain during integration at t = " +
                           csv::format_double(t0 + static_cast<double>(i) * step);
            return;
        }
        if (i % stride == 0 || i == steps)
            traj.points.push_back(make_point(params, c, t0 + static_cast<double>(i) * step, K, L, A));
    }
}

}  // namespace

void EconomyState::validate() const {
    require(std::isfinite(capital) && capital > 0.0, "capital must be > 0");
    require(std::isfinite(labour) && labour > 0.0, "labour must be > 0");
    require(std::isfinite(ideas) && ideas > 0.0, "idea stock must be > 0");
}

double output(const growth::GrowthParams& p, const EconomyState& s) {
    return std::pow((1.0 - p.alpha_k) * s.capital, p.alpha) *
           std::pow(s.ideas * (1.0 - p.alpha_l) * s.labour, 1.0 - p.alpha);
}

void Trajectory::write_csv(std::ostream& out) const {
    csv::Writer w(out);
    w.row({"t", "K", "L", "A", "Y", "g_a", "g_k"});
    for (const auto& p : points)
        w.row({csv::format_double(p.t), csv::format_double(p.capital),
               csv::format_double(p.labour), csv::format_double(p.ideas),
               csv::format_double(p.output), csv::format_double(p.g_a),
               csv::format_double(p.g_k)});
}

EconomyState bgp_state(const growth::GrowthParams& params, double labour) {
    params.validate();
    require(labour > 0.0, "labour must be > 0");
    const growth::SteadyState ss = growth::steady_state(params);
    const Coefficients c = coefficients(params);
    // Solve g_k(K, L, A) = g_k* and g_a(K, L, A) = g_a* for (K, A) at given L.
    const double ratio = std::pow((ss.g_k + params.delta) / c.c_k, 1.0 / (1.0 - params.alpha));
    // A = ratio * K / L
    const double expo = params.beta + params.theta - 1.0;
    const double K = std::pow(
        ss.g_a / (c.c_a * std::pow(labour, params.gamma) *
                  std::pow(ratio / labour, params.theta - 1.0)),
        1.0 / expo);
    const double A = ratio * K / labour;
    EconomyState state{0.0, K, labour, A};
    state.validate();
    return state;
}

Trajectory simulate(const growth::GrowthParams& params, const EconomyState& init, double horizon,
                    double step, int stride) {
    params.validate();
    init.validate();
    require(step > 0.0, "step must be > 0");
    require(stride >= 1, "stride must be >= 1");
    require(horizon > init.t, "horizon must exceed the initial time");
    Trajectory traj;
    integrate_into(traj, params, init.t, init.capital, init.labour, init.ideas, horizon, step,
                   stride, /*record_first=*/true);
    return traj;
}

Trajectory shock_experiment(const growth::GrowthParams& params, const growth::ShockSpec& shock,
                            double t_shock, double horizon, double step, int stride) {
    params.validate();
    shock.validate_against(params);
    require(t_shock > 0.0 && t_shock < horizon, "need 0 < t_shock < horizon");

    const EconomyState init = bgp_state(params);
    Trajectory traj;
    integrate_into(traj, params, 0.0, init.capital, init.labour, init.ideas, t_shock, step,
                   stride, /*record_first=*/true);
    if (!traj.ok()) return traj;

    growth::GrowthParams shocked = params;
    shocked.beta = shock.beta_prime;
    shocked.gamma = shock.gamma_prime;
    const TrajectoryPoint& at_shock = traj.back();
    integrate_into(traj, shocked, at_shock.t, at_shock.capital, at_shock.labour, at_shock.ideas,
                   horizon, step, stride, /*record_first=*/false);
    return traj;
}

ComputePath ComputePath::constant(double level) {
    require(level > 0.0, "compute level must be > 0");
    ComputePath p;
    p.kind_ = Kind::Constant;
    p.level_ = level;
    return p;
}

ComputePath ComputePath::exponential(double level0, double rate) {
    require(level0 > 0.0, "compute level must be > 0");
    ComputePath p;
    p.kind_ = Kind::Exponential;
    p.level_ = level0;
    p.rate_ = rate;
    return p;
}

ComputePath ComputePath::tabulated(std::vector<double> times, std::vector<double> levels) {
    require(times.size() == levels.size(), "times and levels must have equal length");
    require(times.size() >= 2, "tabulated path needs at least two points");
    for (size_t i = 1; i < times.size(); ++i)
        require(times[i] > times[i - 1], "tabulated times must be strictly increasing");
    for (double v : levels) require(v > 0.0, "compute level must be > 0");
    ComputePath p;
    p.kind_ = Kind::Tabulated;
    p.times_ = std::move(times);
    p.levels_ = std::move(levels);
    return p;
}

double ComputePath::operator()(double t) const {
    double base = 0.0;
    switch (kind_) {
        case Kind::Constant:
            base = level_;
            break;
        case Kind::Exponential:
            base = level_ * std::exp(rate_ * t);
            break;
        case Kind::Tabulated: {
            if (t <= times_.front()) {
                base = levels_.front();
            } else if (t >= times_.back()) {
                base = levels_.back();
            } else {
                auto it = std::upper_bound(times_.begin(), times_.end(), t);
                size_t hi = static_cast<size_t>(it - times_.begin());
                size_t lo = hi - 1;
                const double w = (t - times_[lo]) / (times_[hi] - times_[lo]);
                base = levels_[lo] + w * (levels_[hi] - levels_[lo]);
            }
            break;
        }
    }
    return scale_ * base;
}

ComputePath ComputePath::scaled(double factor) const {
    require(factor > 0.0, "scale factor must be > 0");
    ComputePath p = *this;
    p.scale_ *= factor;
    return p;
}

ScalingFit scaling_experiment(double theta, double beta, const ComputePath& path,
                              const std::vector<double>& scales, double horizon, double step,
                              double a0) {
    require(theta < 1.0, "theta must be < 1");
    require(beta > 0.0, "beta must be > 0");
    require(a0 > 0.0, "initial idea level must be > 0");
    require(step > 0.0 && horizon > step, "need 0 < step < horizon");
    {
        std::vector<double> uniq(scales);
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        require(uniq.size() >= 2, "exponent fit needs at least two distinct scales");
    }
    for (double m : scales) require(m > 0.0, "scales must be > 0");

    const auto steps = static_cast<long>(std::llround(horizon / step));
    std::vector<std::vector<double>> log_error(scales.size());

    for (size_t j = 0; j < scales.size(); ++j) {
        const ComputePath scaled = path.scaled(scales[j]);
        auto da = [&](double t, double a) { return std::pow(a, theta) * std::pow(scaled(t), beta); };
        double a = a0;
        log_error[j].reserve(static_cast<size_t>(steps));
        for (long i = 0; i < steps; ++i) {
            const double t = static_cast<double>(i) * step;
            const double k1 = da(t, a);
            const double k2 = da(t + 0.5 * step, a + 0.5 * step * k1);
            const double k3 = da(t + 0.5 * step, a + 0.5 * step * k2);
            const double k4 = da(t + step, a + step * k3);
            a += step / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            if (!std::isfinite(a) || a <= 0.0)
                throw NumericalError("idea level left the positive domain in scaling run");
            // E = 1 - a/(1+a) = 1/(1+a)
            log_error[j].push_back(-std::log1p(a));
        }
    }

    // Per-time-point slope of log E against log m, averaged over the final
    // third of the horizon where the asymptotic power law holds.
    std::vector<double> log_m(scales.size());
    for (size_t j = 0; j < scales.size(); ++j) log_m[j] = std::log(scales[j]);
    double mean_log_m = 0.0;
    for (double v : log_m) mean_log_m += v;
    mean_log_m /= static_cast<double>(log_m.size());
    double denom = 0.0;
    for (double v : log_m) denom += (v - mean_log_m) * (v - mean_log_m);

    const auto first = static_cast<size_t>(2 * steps / 3);
    double slope_sum = 0.0;
    long slope_count = 0;
    for (size_t i = first; i < static_cast<size_t>(steps); ++i) {
        double mean_e = 0.0;
        for (size_t j = 0; j < scales.size(); ++j) mean_e += log_error[j][i];
        mean_e /= static_cast<double>(scales.size());
        double num = 0.0;
        for (size_t j = 0; j < scales.size(); ++j)
            num += (log_m[j] - mean_log_m) * (log_error[j][i] - mean_e);
        slope_sum += num / denom;
        ++slope_count;
    }

    ScalingFit fit;
    fit.exponent = slope_sum / static_cast<double>(slope_count);
    fit.scales = scales;
    for (size_t j = 0; j < scales.size(); ++j)
        fit.final_errors.push_back(std::exp(log_error[j].back()));
    return fit;
}

}  // namespace dlgrowth::dynamics
