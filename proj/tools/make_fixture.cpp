// Generates the synthetic fixture bundle shipped under data/fixture/: two
// computer-vision tasks with known generating parameters (beta = 0.15,
// gamma = 0.30), per-period baseline surveys, per-model compute inputs that
// reproduce the generating FLOP through both estimation methods, and an
// author-feature table with a one-dimensional latent quality factor.
//
// Every row is constructed to pass ingestion (zero quarantined rows) and
// every gtilde is positive by construction.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <vector>

#include "dlgrowth/csv.hpp"
#include "dlgrowth/perf.hpp"
#include "dlgrowth/pipeline.hpp"
#include "dlgrowth/rng.hpp"

using dlgrowth::CivilDate;
using dlgrowth::Rng;
using dlgrowth::csv::format_double;
namespace fs = std::filesystem;

namespace {

constexpr double kBeta = 0.15;
constexpr double kGamma = 0.30;
constexpr double kAlphaExtra = 0.10;
constexpr double kAlphaReimpl = -0.15;
constexpr double kNoiseSd = 0.10;

struct TaskPlan {
    std::string name;
    int records;
    double base_level;     // task constant in the log-gtilde equation
    double baseline_2012;  // baseline accuracy in 2012
};

double baseline_level(const TaskPlan& task, int year) {
    return task.baseline_2012 + 0.03 * static_cast<double>(year - 2012);
}

std::string fmt_int(long v) { return std::to_string(v); }

}  // namespace

int main(int argc, char** argv) {
    fs::path out_dir = argc > 1 ? fs::path(argv[1]) : fs::path("data/fixture");
    fs::create_directories(out_dir);
    Rng rng(dlgrowth::derive_seed(987654321u, "fixture"));

    const std::vector<TaskPlan> tasks = {
        {"image_classification", 96, -8.00, 0.55},
        {"object_detection", 40, -8.15, 0.35},
    };

    std::ofstream experiments_out(out_dir / "experiments.csv");
    std::ofstream baselines_out(out_dir / "baselines.csv");
    std::ofstream compute_out(out_dir / "compute_inputs.csv");
    dlgrowth::csv::Writer experiments(experiments_out);
    dlgrowth::csv::Writer baselines(baselines_out);
    dlgrowth::csv::Writer compute(compute_out);

    experiments.row({"task", "date", "performance", "metric_direction", "model_id",
                     "log_compute", "log_human_capital", "extra_data", "reimplementation"});
    baselines.row({"task", "date", "performance", "metric_direction"});
    compute.row({"model_id", "forward_flop", "epochs", "examples", "batches", "batch_size",
                 "training_seconds", "cores", "peak_flops", "utilization"});

    // Baseline surveys: three entries per (task, half year); the survey
    // median over a 12-month window is exactly baseline_level(task, year).
    for (const auto& task : tasks) {
        for (int year = 2012; year <= 2021; ++year) {
            const double pb = baseline_level(task, year);
            for (int half = 0; half < 2; ++half) {
                const double shift = half == 0 ? 0.0 : 0.015;
                const CivilDate date{year, half == 0 ? 2 : 8, 10};
                for (double offset : {-0.02, 0.0, 0.02}) {
                    // Object-detection baselines enter as error rates to
                    // exercise the metric-direction transform.
                    const double score = pb + shift + offset;
                    if (task.name == "object_detection")
                        baselines.row({task.name, dlgrowth::format_iso_date(date),
                                       format_double(1.0 - score), "error"});
                    else
                        baselines.row({task.name, dlgrowth::format_iso_date(date),
                                       format_double(score), "accuracy"});
                }
            }
        }
    }

    const std::vector<double> epoch_choices = {30, 60, 90, 120};
    const std::vector<double> example_choices = {300000, 1280000, 2500000};
    const std::vector<double> peak_choices = {1e13, 1.56e13, 2.5e13};
    const std::vector<double> core_choices = {4, 8, 16, 32};

    int model_counter = 0;
    for (const auto& task : tasks) {
        for (int i = 0; i < task.records; ++i) {
            const int year = 2012 + (i * 10) / task.records;
            const int month = 1 + static_cast<int>(rng.below(12));
            const int day = 5 + static_cast<int>(rng.below(21));
            const CivilDate date{year, month, day};

            const double log_s = rng.normal(3.0, 0.8);
            const double log10_c = 16.0 + 4.0 * rng.uniform();
            const double log_c = log10_c * std::log(10.0);
            const bool extra = rng.bernoulli(0.30);
            const bool reimpl = rng.bernoulli(0.15);

            const double level = task.base_level - 0.03 * static_cast<double>(year - 2012);
            const double log_gtilde = level + kGamma * log_s + kBeta * log_c +
                                      (extra ? kAlphaExtra : 0.0) +
                                      (reimpl ? kAlphaReimpl : 0.0) +
                                      rng.normal(0.0, kNoiseSd);
            const double gtilde = std::exp(log_gtilde);

            // Performance that reproduces gtilde against the window-12
            // baseline median exactly.
            const double pb = baseline_level(task, year);
            const double odds = pb / (1.0 - pb) * std::exp(gtilde);
            const double performance = odds / (1.0 + odds);

            // A few rows carry log_compute directly; the rest go through the
            // compute estimators.
            const bool direct = i % 12 == 0;
            std::string model_id;
            std::string log_compute_field;
            if (direct) {
                log_compute_field = format_double(log_c);
            } else {
                ++model_counter;
                char buf[16];
                std::snprintf(buf, sizeof(buf), "m%04d", model_counter);
                model_id = buf;
                const double flop = std::exp(log_c);
                const double epochs = epoch_choices[rng.below(epoch_choices.size())];
                const double examples = example_choices[rng.below(example_choices.size())];
                const double forward = flop / (3.0 * epochs * examples);
                const double peak = peak_choices[rng.below(peak_choices.size())];
                const double cores = core_choices[rng.below(core_choices.size())];
                const double seconds = flop / (cores * peak * 0.3);
                compute.row({model_id, format_double(forward), format_double(epochs),
                             format_double(examples), "", "", format_double(seconds),
                             format_double(cores), format_double(peak), "0.3"});
            }

            experiments.row({task.name, dlgrowth::format_iso_date(date),
                             format_double(performance), "accuracy", model_id,
                             log_compute_field, format_double(log_s), extra ? "1" : "0",
                             reimpl ? "1" : "0"});
        }
    }

    // Author features: 12 inputs, a softplus latent with an interaction term,
    // and five outcome columns on their raw scales (counts and SJR values).
    std::ofstream hc_out(out_dir / "hc_features.csv");
    dlgrowth::csv::Writer hc(hc_out);
    {
        std::vector<std::string> header{"id", "date"};
        for (int j = 0; j < 12; ++j) header.push_back("f" + std::to_string(j));
        for (const char* head : {"cit_t1", "cit_t2", "cit_t3", "cit_t5", "sjr"})
            header.push_back(head);
        hc.row(header);
    }
    const int n_pubs = 1200;
    for (int i = 0; i < n_pubs; ++i) {
        std::vector<double> x(12);
        for (auto& v : x) v = rng.normal();
        const double raw = 1.2 * x[0] + 0.9 * x[1] * x[2] + 0.6 * x[3];
        const double latent = std::log1p(std::exp(raw));  // softplus, nonnegative
        const int year = 2012 + static_cast<int>(rng.below(10));
        const int month = 1 + static_cast<int>(rng.below(12));
        const int day = 5 + static_cast<int>(rng.below(21));
        const CivilDate date{year, month, day};
        const double date_norm = dlgrowth::years_since_2012(date);

        auto citations = [&](double intercept, double slope) {
            const double log_target =
                intercept + slope * latent + 0.02 * date_norm + rng.normal(0.0, 0.05);
            return std::floor(std::expm1(std::max(0.0, log_target)));
        };
        const double t1 = citations(1.6, 1.60);
        const double t2 = citations(1.8, 1.70);
        const double t3 = citations(1.9, 1.80);
        const double t5 = citations(2.0, 1.90);
        const double sjr = std::exp(0.2 + 0.8 * latent + rng.normal(0.0, 0.05));
        const bool sjr_missing = rng.bernoulli(0.10);
        const bool t5_missing = rng.bernoulli(0.05);

        std::vector<std::string> row{"p" + fmt_int(i), dlgrowth::format_iso_date(date)};
        for (double v : x) row.push_back(format_double(v));
        row.push_back(format_double(t1));
        row.push_back(format_double(t2));
        row.push_back(format_double(t3));
        row.push_back(t5_missing ? "" : format_double(t5));
        row.push_back(sjr_missing ? "" : format_double(sjr));
        hc.row(row);
    }

    // Fixture run configuration.
    nlohmann::json config{
        {"seed", 20120101},
        {"estimate",
         {{"task_a", "image_classification"}, {"task_b", "object_detection"}}},
        {"bootstrap", {{"replicates", 5000}}},
        {"robustness", {{"k", 3}, {"sigma_replicates", 2000}}},
        {"hc",
         {{"encoder_layers", {32, 16}},
          {"holdout_fraction", 0.15},
          {"schedule",
           {{{"heads", {"cit_t1"}},
             {"batch_size", 96},
             {"learning_rate", 0.004},
             {"epochs", 90}},
            {{"heads", {"cit_t1", "cit_t2", "cit_t3", "cit_t5"}},
             {"batch_size", 96},
             {"learning_rate", 0.004},
             {"epochs", 120}},
            {{"heads", {"cit_t1", "cit_t2", "cit_t3", "cit_t5", "sjr"}},
             {"batch_size", 96},
             {"learning_rate", 0.002},
             {"epochs", 150}}}}}},
    };
    std::ofstream config_out(out_dir / "config.json");
    config_out << config.dump(2) << '\n';

    std::cout << "fixture written to " << out_dir.string() << '\n';
    return 0;
}
