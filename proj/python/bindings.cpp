// Python bindings for the main operations: growth closed forms, the
// performance transform, compute estimators, the economy simulator, and the
// core regression entry point.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dlgrowth/compute_est.hpp"
#include "dlgrowth/dynamics.hpp"
#include "dlgrowth/econ.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/growth.hpp"
#include "dlgrowth/inference.hpp"
#include "dlgrowth/perf.hpp"

namespace py = pybind11;
using namespace dlgrowth;

namespace {

growth::GrowthParams params_from_kwargs(double beta, double gamma, double theta, double n,
                                        double alpha, double B, double s, double delta,
                                        double alpha_k, double alpha_l) {
    growth::GrowthParams p;
    p.beta = beta;
    p.gamma = gamma;
    p.theta = theta;
    p.n = n;
    p.alpha = alpha;
    p.B = B;
    p.s = s;
    p.delta = delta;
    p.alpha_k = alpha_k;
    p.alpha_l = alpha_l;
    return p;
}

dynamics::ComputePath path_from(const std::string& kind, double level, double rate) {
    if (kind == "constant") return dynamics::ComputePath::constant(level);
    if (kind == "exponential") return dynamics::ComputePath::exponential(level, rate);
    throw ValidationError("path kind must be 'constant' or 'exponential'");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Numerical toolkit for AI-augmented R&D growth analysis";

    py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<growth::SteadyState>(m, "SteadyState")
        .def_readonly("g_a", &growth::SteadyState::g_a)
        .def_readonly("g_k", &growth::SteadyState::g_k)
        .def("__repr__", [](const growth::SteadyState& s) {
            return "SteadyState(g_a=" + std::to_string(s.g_a) +
                   ", g_k=" + std::to_string(s.g_k) + ")";
        });

    m.def(
        "steady_state",
        [](double beta, double gamma, double theta, double n) {
            return growth::steady_state_rates(beta, gamma, theta, n);
        },
        py::arg("beta"), py::arg("gamma"), py::arg("theta"), py::arg("n"),
        "Steady-state idea and capital growth rates.");

    m.def("capital_cost_share", &growth::capital_cost_share, py::arg("beta"), py::arg("gamma"));
    m.def("share_to_beta", &growth::share_to_beta, py::arg("share"), py::arg("gamma"));
    m.def("project_growth", &growth::project_growth, py::arg("share"), py::arg("gamma") = 0.4,
          py::arg("theta") = 0.5, py::arg("n") = 0.01);

    m.def(
        "proposition1_effect",
        [](double beta, double gamma, double theta, double n, double beta_prime,
           double gamma_prime) {
            growth::GrowthParams p;
            p.beta = beta;
            p.gamma = gamma;
            p.theta = theta;
            p.n = n;
            const growth::ShockEffect e =
                growth::proposition1_effect(p, growth::ShockSpec{beta_prime, gamma_prime});
            py::dict out;
            out["g_a_before"] = e.g_a_before;
            out["g_a_after"] = e.g_a_after;
            out["g_k_before"] = e.g_k_before;
            out["g_k_after"] = e.g_k_after;
            return out;
        },
        py::arg("beta"), py::arg("gamma"), py::arg("theta"), py::arg("n"),
        py::arg("beta_prime"), py::arg("gamma_prime"));

    m.def("ces_marginal_product", &growth::ces_marginal_product, py::arg("d"), py::arg("c"),
          py::arg("zeta"), py::arg("eta"), py::arg("sigma"));

    m.def("perf_to_tech", &perf::perf_to_tech, py::arg("p"));
    m.def("tech_to_perf", &perf::tech_to_perf, py::arg("a"));
    m.def(
        "gtilde", [](double p_new, double p_baseline) { return perf::gtilde(p_new, p_baseline); },
        py::arg("p_new"), py::arg("p_baseline"));
    m.def(
        "baseline_for",
        [](const std::string& task, const std::string& period, std::vector<double> survey) {
            return perf::baseline_for(task, period, survey);
        },
        py::arg("task"), py::arg("period"), py::arg("survey"));

    m.def(
        "estimate_method1",
        [](double forward_flop, double epochs, std::optional<double> examples,
           std::optional<double> batches, std::optional<double> batch_size) {
            compute_est::ArchitectureCount arch;
            arch.forward_flop = forward_flop;
            arch.epochs = epochs;
            arch.examples = examples;
            arch.batches = batches;
            arch.batch_size = batch_size;
            return compute_est::estimate_method1(arch);
        },
        py::arg("forward_flop"), py::arg("epochs"), py::arg("examples") = std::nullopt,
        py::arg("batches") = std::nullopt, py::arg("batch_size") = std::nullopt);

    m.def(
        "estimate_method2",
        [](double training_seconds, double cores, double peak_flops,
           std::optional<double> utilization) {
            compute_est::HardwareCount hw;
            hw.training_seconds = training_seconds;
            hw.cores = cores;
            hw.peak_flops = peak_flops;
            hw.utilization = utilization;
            return compute_est::estimate_method2(hw);
        },
        py::arg("training_seconds"), py::arg("cores"), py::arg("peak_flops"),
        py::arg("utilization") = std::nullopt);

    m.def(
        "reconcile",
        [](std::vector<double> estimates, const std::string& mode) {
            const compute_est::Reconciled r = compute_est::reconcile(
                estimates, mode == "arithmetic" ? compute_est::MeanMode::Arithmetic
                                                : compute_est::MeanMode::Geometric);
            py::dict out;
            out["value"] = r.value;
            out["spread"] = r.spread;
            out["spread_warning"] = r.spread_warning;
            return out;
        },
        py::arg("estimates"), py::arg("mode") = "geometric");

    m.def(
        "simulate",
        [](double beta, double gamma, double theta, double n, double alpha, double B, double s,
           double delta, double alpha_k, double alpha_l, double horizon, double step,
           int stride, bool from_bgp, double K0, double L0, double A0) {
            const growth::GrowthParams p = params_from_kwargs(beta, gamma, theta, n, alpha, B,
                                                              s, delta, alpha_k, alpha_l);
            dynamics::EconomyState init{0.0, K0, L0, A0};
            if (from_bgp) init = dynamics::bgp_state(p);
            const dynamics::Trajectory traj =
                dynamics::simulate(p, init, horizon, step, stride);
            std::vector<double> t, K, L, A, Y, g_a, g_k;
            for (const auto& point : traj.points) {
                t.push_back(point.t);
                K.push_back(point.capital);
                L.push_back(point.labour);
                A.push_back(point.ideas);
                Y.push_back(point.output);
                g_a.push_back(point.g_a);
                g_k.push_back(point.g_k);
            }
            py::dict out;
            out["t"] = t;
            out["K"] = K;
            out["L"] = L;
            out["A"] = A;
            out["Y"] = Y;
            out["g_a"] = g_a;
            out["g_k"] = g_k;
            out["ok"] = traj.ok();
            if (!traj.ok()) out["failure"] = *traj.failure;
            return out;
        },
        py::arg("beta") = 0.15, py::arg("gamma") = 0.4, py::arg("theta") = 0.5,
        py::arg("n") = 0.01, py::arg("alpha") = 0.33, py::arg("B") = 1.0, py::arg("s") = 0.2,
        py::arg("delta") = 0.05, py::arg("alpha_k") = 0.1, py::arg("alpha_l") = 0.1,
        py::arg("horizon") = 1000.0, py::arg("step") = 0.25, py::arg("stride") = 10,
        py::arg("from_bgp") = true, py::arg("K0") = 1.0, py::arg("L0") = 1.0,
        py::arg("A0") = 1.0);

    m.def(
        "scaling_experiment",
        [](double theta, double beta, std::vector<double> scales, const std::string& path_kind,
           double level, double rate, double horizon, double step) {
            const dynamics::ScalingFit fit = dynamics::scaling_experiment(
                theta, beta, path_from(path_kind, level, rate), scales, horizon, step);
            py::dict out;
            out["exponent"] = fit.exponent;
            out["scales"] = fit.scales;
            out["final_errors"] = fit.final_errors;
            return out;
        },
        py::arg("theta"), py::arg("beta"), py::arg("scales"),
        py::arg("path_kind") = "exponential", py::arg("level") = 1.0, py::arg("rate") = 0.25,
        py::arg("horizon") = 80.0, py::arg("step") = 0.02);

    m.def(
        "ols_robust",
        [](const Eigen::VectorXd& y, const Eigen::MatrixXd& X,
           std::optional<std::vector<std::string>> names) {
            std::vector<std::string> resolved;
            if (names) {
                resolved = *names;
            } else {
                for (Eigen::Index j = 0; j < X.cols(); ++j)
                    resolved.push_back("x" + std::to_string(j));
            }
            const econ::FitResult fit = econ::ols_robust(y, X, resolved);
            py::dict out;
            out["coef"] = fit.coef;
            out["cov"] = fit.cov;
            out["names"] = fit.names;
            out["log_likelihood"] = fit.log_likelihood;
            out["n"] = fit.n;
            out["k"] = fit.k;
            return out;
        },
        py::arg("y"), py::arg("X"), py::arg("names") = std::nullopt,
        "Least squares with White covariance scaled by (n-1)/(n-k).");

    m.def(
        "kde",
        [](std::vector<double> values, std::optional<double> bandwidth, int grid_points) {
            const inference::KdeResult k = inference::kde(values, bandwidth, grid_points);
            py::dict out;
            out["grid"] = k.grid;
            out["density"] = k.density;
            out["bandwidth"] = k.bandwidth;
            return out;
        },
        py::arg("values"), py::arg("bandwidth") = std::nullopt, py::arg("grid_points") = 512);
}
