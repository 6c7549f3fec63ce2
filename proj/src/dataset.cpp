#include "dlgrowth/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "dlgrowth/csv.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/perf.hpp"

namespace dlgrowth::io {

namespace {

// Accuracy-direction score from (value, metric_direction).
double directed_score(double value, const std::string& direction) {
    if (direction == "accuracy") return value;
    if (direction == "error") return 1.0 - value;
    throw ValidationError("metric_direction must be 'accuracy' or 'error', got '" + direction +
                          "'");
}

bool parse_flag(const std::string& field, const std::string& context) {
    if (field == "0") return false;
    if (field == "1") return true;
    throw ValidationError("flag must be 0 or 1 in " + context);
}

std::optional<double> optional_double(const std::vector<std::string>& row, size_t col,
                                      const std::string& context) {
    if (csv::is_missing(row[col])) return std::nullopt;
    return csv::parse_double(row[col], context);
}

}  // namespace

IngestResult ingest(const IngestPaths& paths) {
    IngestResult out;

    // Baselines first so the referential check can run during the
    // experiments pass.
    {
        const csv::Table table = csv::read_file(paths.baselines);
        const size_t c_task = table.column("task");
        const size_t c_date = table.column("date");
        const size_t c_perf = table.column("performance");
        const size_t c_dir = table.column("metric_direction");
        for (size_t i = 0; i < table.rows.size(); ++i) {
            const auto& row = table.rows[i];
            ++out.report.rows_in;
            try {
                BaselineRow b;
                b.task = row[c_task];
                require(!b.task.empty(), "task must be nonempty");
                b.date = parse_iso_date(row[c_date]);
                const double raw = csv::parse_double(row[c_perf], "baselines.performance");
                b.score = directed_score(raw, row[c_dir]);
                require(b.score > 0.0 && b.score < 1.0,
                        "score outside the logistic domain (0,1)");
                out.bundle.baselines.push_back(std::move(b));
                ++out.report.rows_used;
            } catch (const ValidationError& e) {
                out.report.quarantined.push_back({paths.baselines, i + 1, e.what()});
            }
        }
    }

    if (!paths.compute_inputs.empty()) {
        const csv::Table table = csv::read_file(paths.compute_inputs);
        const size_t c_id = table.column("model_id");
        const auto c_fwd = table.find_column("forward_flop");
        const auto c_epochs = table.find_column("epochs");
        const auto c_examples = table.find_column("examples");
        const auto c_batches = table.find_column("batches");
        const auto c_bs = table.find_column("batch_size");
        const auto c_secs = table.find_column("training_seconds");
        const auto c_cores = table.find_column("cores");
        const auto c_peak = table.find_column("peak_flops");
        const auto c_util = table.find_column("utilization");
        for (size_t i = 0; i < table.rows.size(); ++i) {
            const auto& row = table.rows[i];
            ++out.report.rows_in;
            try {
                ComputeRow c;
                c.model_id = row[c_id];
                require(!c.model_id.empty(), "model_id must be nonempty");
                require(!out.bundle.compute_inputs.contains(c.model_id),
                        "duplicate model_id '" + c.model_id + "'");
                if (c_fwd && !csv::is_missing(row[*c_fwd])) {
                    compute_est::ArchitectureCount arch;
                    arch.forward_flop = csv::parse_double(row[*c_fwd], "forward_flop");
                    require(c_epochs.has_value(), "forward_flop given without epochs");
                    arch.epochs = csv::parse_double(row[*c_epochs], "epochs");
                    if (c_examples) arch.examples = optional_double(row, *c_examples, "examples");
                    if (c_batches) arch.batches = optional_double(row, *c_batches, "batches");
                    if (c_bs) arch.batch_size = optional_double(row, *c_bs, "batch_size");
                    arch.validate();
                    c.arch = std::move(arch);
                }
                if (c_secs && !csv::is_missing(row[*c_secs])) {
                    compute_est::HardwareCount hw;
                    hw.training_seconds = csv::parse_double(row[*c_secs], "training_seconds");
                    require(c_cores.has_value() && c_peak.has_value(),
                            "training_seconds given without cores/peak_flops");
                    hw.cores = csv::parse_double(row[*c_cores], "cores");
                    hw.peak_flops = csv::parse_double(row[*c_peak], "peak_flops");
                    if (c_util) hw.utilization = optional_double(row, *c_util, "utilization");
                    hw.validate();
                    c.hw = std::move(hw);
                }
                require(c.arch.has_value() || c.hw.has_value(),
                        "row carries neither architecture nor hardware fields");
                out.bundle.compute_inputs.emplace(c.model_id, std::move(c));
                ++out.report.rows_used;
            } catch (const ValidationError& e) {
                out.report.quarantined.push_back({paths.compute_inputs, i + 1, e.what()});
            }
        }
    }

    std::set<std::string> baseline_tasks;
    for (const auto& b : out.bundle.baselines) baseline_tasks.insert(b.task);

    {
        const csv::Table table = csv::read_file(paths.experiments);
        const size_t c_task = table.column("task");
        const size_t c_date = table.column("date");
        const size_t c_perf = table.column("performance");
        const size_t c_dir = table.column("metric_direction");
        const size_t c_hc = table.column("log_human_capital");
        const size_t c_extra = table.column("extra_data");
        const size_t c_reimpl = table.column("reimplementation");
        const auto c_id = table.find_column("model_id");
        const auto c_logc = table.find_column("log_compute");
        require(c_id.has_value() || c_logc.has_value(),
                "experiments need a model_id or log_compute column");
        for (size_t i = 0; i < table.rows.size(); ++i) {
            const auto& row = table.rows[i];
            ++out.report.rows_in;
            try {
                ExperimentRow e;
                e.task = row[c_task];
                require(!e.task.empty(), "task must be nonempty");
                e.date = parse_iso_date(row[c_date]);
                const double raw = csv::parse_double(row[c_perf], "experiments.performance");
                e.performance = directed_score(raw, row[c_dir]);
                require(e.performance > 0.0 && e.performance < 1.0,
                        "performance outside the logistic domain (0,1)");
                e.log_human_capital = csv::parse_double(row[c_hc], "log_human_capital");
                e.extra_data = parse_flag(row[c_extra], "extra_data");
                e.reimplementation = parse_flag(row[c_reimpl], "reimplementation");
                if (c_id) e.model_id = row[*c_id];
                if (c_logc) e.log_compute = optional_double(row, *c_logc, "log_compute");
                require(baseline_tasks.contains(e.task),
                        "task '" + e.task + "' has no baseline survey");
                if (!e.log_compute) {
                    require(!e.model_id.empty(), "row has neither log_compute nor model_id");
                    require(out.bundle.compute_inputs.contains(e.model_id),
                            "model_id '" + e.model_id + "' has no compute inputs");
                }
                out.bundle.experiments.push_back(std::move(e));
                ++out.report.rows_used;
            } catch (const ValidationError& e) {
                out.report.quarantined.push_back({paths.experiments, i + 1, e.what()});
            }
        }
    }
    return out;
}

std::vector<econ::ExperimentRecord> ResolvedDataset::records() const {
    std::vector<econ::ExperimentRecord> out;
    out.reserve(resolved.size());
    for (const auto& r : resolved) out.push_back(r.record);
    return out;
}

ResolvedDataset resolve_records(const DatasetBundle& bundle, int window_months,
                                const std::vector<std::string>& task_filter) {
    ResolvedDataset out;
    const std::set<std::string> wanted(task_filter.begin(), task_filter.end());

    // Baseline survey scores keyed by (task, period).
    std::map<std::pair<std::string, int>, std::vector<double>> surveys;
    for (const auto& b : bundle.baselines)
        surveys[{b.task, econ::period_index(b.date, window_months)}].push_back(b.score);

    for (const auto& e : bundle.experiments) {
        if (!wanted.empty() && !wanted.contains(e.task)) continue;
        const int period = econ::period_index(e.date, window_months);
        const auto it = surveys.find({e.task, period});
        const std::span<const double> survey =
            it == surveys.end() ? std::span<const double>() : std::span<const double>(it->second);
        const double baseline = perf::baseline_for(e.task, std::to_string(period), survey);

        ResolvedRecord r;
        r.baseline = baseline;
        r.record.task = e.task;
        r.record.date = e.date;
        r.record.gtilde = perf::gtilde(e.performance, baseline);
        r.record.log_human_capital = e.log_human_capital;
        r.record.extra_data = e.extra_data;
        r.record.reimplementation = e.reimplementation;

        if (e.log_compute) {
            r.record.log_compute = *e.log_compute;
            r.compute_provenance = "direct";
        } else {
            const ComputeRow& c = bundle.compute_inputs.at(e.model_id);
            std::vector<double> estimates;
            if (c.arch) estimates.push_back(compute_est::estimate_method1(*c.arch));
            if (c.hw) estimates.push_back(compute_est::estimate_method2(*c.hw));
            const compute_est::Reconciled rec = compute_est::reconcile(estimates);
            r.record.log_compute = std::log(rec.value);
            r.compute_provenance = estimates.size() == 2 ? "reconciled"
                                   : c.arch              ? "method1"
                                                         : "method2";
            r.spread_warning = rec.spread_warning;
            if (rec.spread_warning)
                out.warnings.push_back("model '" + e.model_id + "': method estimates differ by " +
                                       csv::format_double(rec.spread) + "x");
        }
        out.resolved.push_back(std::move(r));
    }
    return out;
}

}  // namespace dlgrowth::io
