#include "dlgrowth/pipeline.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numeric>
#include <set>

#include "dlgrowth/csv.hpp"
#include "dlgrowth/digest.hpp"
#include "dlgrowth/errors.hpp"
#include "dlgrowth/hcnet.hpp"
#include "dlgrowth/inference.hpp"
#include "dlgrowth/perf.hpp"
#include "dlgrowth/rng.hpp"
#include "dlgrowth/stats.hpp"
#include "dlgrowth/translog.hpp"

namespace dlgrowth::pipeline {

namespace fs = std::filesystem;

namespace {

std::string now_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

void merge_patch(json& base, const json& patch) {
    if (!patch.is_object()) {
        base = patch;
        return;
    }
    for (auto it = patch.begin(); it != patch.end(); ++it) {
        if (base.contains(it.key()))
            merge_patch(base[it.key()], it.value());
        else
            base[it.key()] = it.value();
    }
}

std::string fmt(double v) { return csv::format_double(v); }

}  // namespace

Config Config::defaults() {
    Config c;
    c.data_ = json{
        {"seed", 20120101},
        {"growth", {{"gamma", 0.4}, {"theta", 0.5}, {"n", 0.01}}},
        {"estimate",
         {{"window_months", 12},
          {"estimator", "auto"},
          {"task_a", "image_classification"},
          {"task_b", "object_detection"}}},
        {"bootstrap",
         {{"replicates", 10000}, {"confidence", 0.9}, {"statistic", "capital_share"}}},
        {"robustness",
         {{"k", 3},
          {"max_subsamples", 1000000},
          {"window_lengths", {6, 12, 18}},
          {"sigma_replicates", 2000}}},
        {"hc",
         {{"encoder_layers", {32, 16}},
          {"batch_norm", true},
          {"frozen_prefix", 0},
          {"holdout_fraction", 0.15},
          {"schedule",
           {{{"heads", {"cit_t1", "cit_t2", "cit_t3", "cit_t5", "sjr"}},
             {"batch_size", 256},
             {"learning_rate", 0.0005},
             {"epochs", 30}}}}}},
        {"execution", {{"output_dir", "runs"}, {"threads", 0}}},
    };
    return c;
}

Config Config::load(const std::optional<std::string>& path) {
    Config c = defaults();
    if (path) {
        std::ifstream in(*path);
        if (!in) throw ValidationError("cannot open config file: " + *path);
        json file_tree;
        try {
            in >> file_tree;
        } catch (const json::parse_error& e) {
            throw ValidationError("config parse error in " + *path + ": " + e.what());
        }
        merge_patch(c.data_, file_tree);
    }
    return c;
}

void Config::set(const std::string& dotted_key, const json& value) {
    json* node = &data_;
    size_t pos = 0;
    while (true) {
        const size_t dot = dotted_key.find('.', pos);
        const std::string part = dotted_key.substr(pos, dot - pos);
        require(!part.empty(), "bad config key: " + dotted_key);
        if (dot == std::string::npos) {
            (*node)[part] = value;
            return;
        }
        node = &(*node)[part];
        pos = dot + 1;
    }
}

json Config::canonical() const {
    json c = data_;
    c.erase("execution");
    return c;
}

uint64_t Config::seed() const { return data_.at("seed").get<uint64_t>(); }
std::string Config::output_dir() const {
    return data_.at("execution").at("output_dir").get<std::string>();
}
unsigned Config::threads() const { return data_.at("execution").at("threads").get<unsigned>(); }
double Config::gamma() const { return data_.at("growth").at("gamma").get<double>(); }
double Config::theta() const { return data_.at("growth").at("theta").get<double>(); }
double Config::pop_growth() const { return data_.at("growth").at("n").get<double>(); }
int Config::window_months() const {
    return data_.at("estimate").at("window_months").get<int>();
}

econ::Estimator Config::estimator() const {
    const std::string name = data_.at("estimate").at("estimator").get<std::string>();
    if (name == "auto") return econ::Estimator::Auto;
    if (name == "ols" || name == "ols_robust") return econ::Estimator::OlsRobust;
    if (name == "gls" || name == "gls_ml") return econ::Estimator::GlsMl;
    throw ValidationError("unknown estimator '" + name + "' (use auto, ols, or gls)");
}

std::string Config::task_for(char group) const {
    if (group == 'A') return data_.at("estimate").at("task_a").get<std::string>();
    if (group == 'B') return data_.at("estimate").at("task_b").get<std::string>();
    throw ValidationError("no task mapping for model group");
}

int Config::bootstrap_replicates() const {
    return data_.at("bootstrap").at("replicates").get<int>();
}
double Config::bootstrap_confidence() const {
    return data_.at("bootstrap").at("confidence").get<double>();
}
std::string Config::bootstrap_statistic() const {
    return data_.at("bootstrap").at("statistic").get<std::string>();
}
int Config::leave_out_k() const { return data_.at("robustness").at("k").get<int>(); }
long Config::max_subsamples() const {
    return data_.at("robustness").at("max_subsamples").get<long>();
}
std::vector<int> Config::window_lengths() const {
    return data_.at("robustness").at("window_lengths").get<std::vector<int>>();
}
int Config::sigma_replicates() const {
    return data_.at("robustness").at("sigma_replicates").get<int>();
}
const json& Config::hc() const { return data_.at("hc"); }

RunContext::RunContext(std::string command, const Config& config,
                       const std::vector<std::string>& input_paths)
    : command_(std::move(command)), config_(config), inputs_(json::object()) {
    started_at_ = now_utc();
    std::string key = command_ + "\n" + config.canonical().dump() + "\n";
    for (const auto& path : input_paths) {
        const std::string digest = sha256_file(path);
        inputs_[path] = digest;
        key += path + "=" + digest + "\n";
    }
    key += "seed=" + std::to_string(config.seed());
    digest_ = sha256_hex(key).substr(0, 12);
    dir_ = fs::path(config.output_dir()) / (command_ + "-" + digest_);
    fs::create_directories(dir_);
}

fs::path RunContext::output_path(const std::string& name) {
    outputs_.push_back(name);
    return dir_ / name;
}

void RunContext::warn(const std::string& message) { warnings_.push_back(message); }

void RunContext::warn_all(const std::vector<std::string>& messages) {
    warnings_.insert(warnings_.end(), messages.begin(), messages.end());
}

void RunContext::finish() {
    json manifest{
        {"tool", "dlgrowth"},
        {"version", "0.1.0"},
        {"command", command_},
        {"run_digest", digest_},
        {"seed", config_.seed()},
        {"config", config_.canonical()},
        {"inputs", inputs_},
        {"outputs", outputs_},
        {"warnings", warnings_},
        {"timestamps", {{"started", started_at_}, {"finished", now_utc()}}},
    };
    std::ofstream out(dir_ / "manifest.json");
    out << manifest.dump(2) << '\n';
}

ModelPlan plan_for_model(const std::string& model_id, const Config& config) {
    static const std::set<std::string> valid = {"A1", "A2", "B1", "B2", "C1", "C2"};
    if (!valid.contains(model_id)) {
        std::string list;
        for (const auto& v : valid) list += (list.empty() ? "" : ", ") + v;
        throw ValidationError("unknown model id '" + model_id + "' (valid: " + list + ")");
    }
    ModelPlan plan;
    plan.id = model_id;
    plan.spec.window_months = config.window_months();
    plan.spec.include_trend = model_id[1] == '2';
    plan.spec.pooled = model_id[0] == 'C';
    plan.spec.estimator = config.estimator();
    if (model_id[0] != 'C') plan.tasks.push_back(config.task_for(model_id[0]));
    return plan;
}

namespace {

json fit_to_json(const econ::FitResult& fit) {
    json coefficients = json::array();
    for (size_t i = 0; i < fit.names.size(); ++i) {
        coefficients.push_back({{"name", fit.names[i]},
                                {"estimate", fit.coef(static_cast<Eigen::Index>(i))},
                                {"se", std::sqrt(fit.cov(static_cast<Eigen::Index>(i),
                                                         static_cast<Eigen::Index>(i)))}});
    }
    json out{{"estimator", fit.estimator},
             {"n", fit.n},
             {"k", fit.k},
             {"n_params", fit.n_params},
             {"log_likelihood", fit.log_likelihood},
             {"converged", fit.converged},
             {"coefficients", coefficients},
             {"warnings", fit.warnings}};
    if (fit.find(econ::kLogC) && fit.find(econ::kLogS)) {
        const double beta = fit.coefficient(econ::kLogC);
        const double gamma = fit.coefficient(econ::kLogS);
        if (beta >= 0.0 && gamma >= 0.0 && beta + gamma > 0.0)
            out["capital_share"] = growth::capital_cost_share(beta, gamma);
    }
    if (fit.delta.size() > 0) {
        json delta = json::array();
        for (size_t i = 0; i < fit.delta_names.size(); ++i)
            delta.push_back({{"name", fit.delta_names[i]},
                             {"estimate", fit.delta(static_cast<Eigen::Index>(i))}});
        out["variance_model"] = delta;
    }
    return out;
}

json report_to_json(const io::IngestReport& report) {
    json quarantined = json::array();
    for (const auto& q : report.quarantined)
        quarantined.push_back({{"file", q.file}, {"row", q.line}, {"reason", q.reason}});
    return json{{"rows_in", report.rows_in},
                {"rows_used", report.rows_used},
                {"rows_quarantined", report.quarantined.size()},
                {"quarantined", quarantined},
                {"warnings", report.warnings}};
}

void write_json_file(const fs::path& path, const json& j) {
    std::ofstream out(path);
    out << j.dump(2) << '\n';
}

std::vector<std::string> ingest_inputs(const io::IngestPaths& paths) {
    std::vector<std::string> inputs{paths.experiments, paths.baselines};
    if (!paths.compute_inputs.empty()) inputs.push_back(paths.compute_inputs);
    return inputs;
}

void write_resolved_csv(const fs::path& path, const io::ResolvedDataset& resolved,
                        int window_months) {
    std::ofstream out(path);
    csv::Writer w(out);
    w.row({"task", "date", "period", "gtilde", "baseline", "log_compute",
           "compute_provenance", "log_human_capital", "extra_data", "reimplementation",
           "spread_warning"});
    for (const auto& r : resolved.resolved) {
        w.row({r.record.task, format_iso_date(r.record.date),
               std::to_string(econ::period_index(r.record.date, window_months)),
               fmt(r.record.gtilde), fmt(r.baseline), fmt(r.record.log_compute),
               r.compute_provenance, fmt(r.record.log_human_capital),
               r.record.extra_data ? "1" : "0", r.record.reimplementation ? "1" : "0",
               r.spread_warning ? "1" : "0"});
    }
}

struct PreparedModel {
    ModelPlan plan;
    io::IngestReport report;
    io::ResolvedDataset resolved;
    std::vector<econ::ExperimentRecord> records;
};

PreparedModel prepare_model(const Config& config, const io::IngestPaths& paths,
                            const std::string& model_id) {
    PreparedModel prep;
    prep.plan = plan_for_model(model_id, config);
    io::IngestResult ingested = io::ingest(paths);
    prep.report = std::move(ingested.report);
    prep.resolved =
        io::resolve_records(ingested.bundle, prep.plan.spec.window_months, prep.plan.tasks);
    prep.records = prep.resolved.records();
    require(!prep.records.empty(), "no records for model " + model_id);
    return prep;
}

}  // namespace

fs::path run_ingest_check(const Config& config, const io::IngestPaths& paths) {
    RunContext run("ingest-check", config, ingest_inputs(paths));
    const io::IngestResult result = io::ingest(paths);
    write_json_file(run.output_path("ingest_report.json"), report_to_json(result.report));
    run.warn_all(result.report.warnings);
    run.finish();
    std::cout << "ingest-check: " << result.report.rows_used << "/" << result.report.rows_in
              << " rows used, " << result.report.quarantined.size() << " quarantined -> "
              << run.dir().string() << '\n';
    return run.dir();
}

fs::path run_estimate(const Config& config, const io::IngestPaths& paths,
                      const std::string& model_id) {
    RunContext run("estimate-" + model_id, config, ingest_inputs(paths));
    PreparedModel prep = prepare_model(config, paths, model_id);
    write_json_file(run.output_path("ingest_report.json"), report_to_json(prep.report));
    write_resolved_csv(run.output_path("records_resolved.csv"), prep.resolved,
                       prep.plan.spec.window_months);
    run.warn_all(prep.resolved.warnings);

    const econ::Design design = econ::build_design(prep.records, prep.plan.spec);
    const econ::FitResult ols = econ::ols_robust(design.y, design.X, design.names);
    std::optional<econ::BreuschPagan> bp;
    try {
        bp = econ::breusch_pagan(ols, design.X);
    } catch (const NumericalError&) {
    }
    const econ::FitResult fit = econ::fit_design(design, prep.plan.spec.estimator);
    run.warn_all(fit.warnings);

    json fit_json = fit_to_json(fit);
    fit_json["model"] = model_id;
    fit_json["window_months"] = prep.plan.spec.window_months;
    if (bp)
        fit_json["breusch_pagan"] = {{"lm", bp->lm}, {"df", bp->df}, {"p_value", bp->p_value}};
    write_json_file(run.output_path("fit.json"), fit_json);

    {
        std::ofstream out(run.output_path("estimates.csv"));
        csv::Writer w(out);
        w.row({"model", "window_months", "estimator", "n", "beta", "beta_se", "gamma",
               "gamma_se", "trend", "trend_se", "log_likelihood", "capital_share"});
        const bool trend = prep.plan.spec.include_trend;
        const double beta = fit.coefficient(econ::kLogC);
        const double gamma = fit.coefficient(econ::kLogS);
        w.row({model_id, std::to_string(prep.plan.spec.window_months), fit.estimator,
               std::to_string(fit.n), fmt(beta), fmt(fit.se(econ::kLogC)), fmt(gamma),
               fmt(fit.se(econ::kLogS)), trend ? fmt(fit.coefficient(econ::kTrend)) : "",
               trend ? fmt(fit.se(econ::kTrend)) : "", fmt(fit.log_likelihood),
               beta + gamma > 0.0 && beta >= 0.0 && gamma >= 0.0
                   ? fmt(growth::capital_cost_share(beta, gamma))
                   : ""});
    }
    run.finish();
    std::cout << "estimate " << model_id << ": beta=" << fit.coefficient(econ::kLogC)
              << " gamma=" << fit.coefficient(econ::kLogS) << " (" << fit.estimator << ", n="
              << fit.n << ") -> " << run.dir().string() << '\n';
    return run.dir();
}

fs::path run_bootstrap(const Config& config, const io::IngestPaths& paths,
                       const std::string& model_id) {
    RunContext run("bootstrap-" + model_id, config, ingest_inputs(paths));
    PreparedModel prep = prepare_model(config, paths, model_id);
    write_json_file(run.output_path("ingest_report.json"), report_to_json(prep.report));
    run.warn_all(prep.resolved.warnings);

    inference::BootstrapConfig cfg;
    cfg.replicates = config.bootstrap_replicates();
    cfg.confidence = config.bootstrap_confidence();
    cfg.seed = derive_seed(config.seed(), "bootstrap");
    cfg.threads = config.threads();
    const std::string stat = config.bootstrap_statistic();
    if (stat == "capital_share") {
        cfg.statistic = inference::Statistic::CapitalShare;
    } else if (stat == "sigma") {
        cfg.statistic = inference::Statistic::Sigma;
    } else {
        cfg.statistic = inference::Statistic::Coefficient;
        cfg.coef_name = stat;
    }

    const inference::BootstrapResult result =
        inference::bootstrap_bc(prep.records, prep.plan.spec, cfg);
    run.warn_all(result.warnings);

    {
        std::ofstream out(run.output_path("replicates.csv"));
        csv::Writer w(out);
        w.row({"replicate", "value"});
        for (size_t i = 0; i < result.replicates.size(); ++i)
            w.row({std::to_string(i), fmt(result.replicates[i])});
    }
    write_json_file(run.output_path("summary.json"),
                    json{{"model", model_id},
                         {"statistic", stat},
                         {"point", result.point},
                         {"lower", result.lower},
                         {"upper", result.upper},
                         {"confidence", cfg.confidence},
                         {"z0", result.z0},
                         {"replicates", cfg.replicates},
                         {"failed", result.failed}});
    run.finish();
    std::cout << "bootstrap " << model_id << " " << stat << ": " << result.point << " ["
              << result.lower << ", " << result.upper << "] -> " << run.dir().string() << '\n';
    return run.dir();
}

fs::path run_project(const Config& config, const std::vector<double>& share_grid,
                     const std::vector<double>& marks) {
    RunContext run("project", config, {});
    const double gamma = config.gamma();
    const double theta = config.theta();
    const double n = config.pop_growth();

    std::vector<std::pair<double, bool>> rows;
    for (double share : share_grid) rows.emplace_back(share, false);
    for (double share : marks) rows.emplace_back(share, true);
    std::sort(rows.begin(), rows.end());

    std::ofstream out(run.output_path("curve.csv"));
    csv::Writer w(out);
    w.row({"share", "g_a", "marker"});
    for (const auto& [share, marker] : rows)
        w.row({fmt(share), fmt(growth::project_growth(share, gamma, theta, n)),
               marker ? "1" : "0"});
    run.finish();
    std::cout << "project: " << rows.size() << " points (gamma=" << gamma << ", theta=" << theta
              << ", n=" << n << ") -> " << run.dir().string() << '\n';
    return run.dir();
}

fs::path run_compute_est(const Config& config, const std::string& input_csv) {
    RunContext run("compute-est", config, {input_csv});
    const csv::Table table = csv::read_file(input_csv);

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

    std::ofstream out(run.output_path("compute_estimates.csv"));
    csv::Writer w(out);
    std::vector<std::string> header = table.header;
    for (const auto& extra : {"method1_flop", "method2_flop", "flop", "log_flop", "spread",
                              "provenance", "warning"})
        header.push_back(extra);
    w.row(header);

    auto opt = [&](const std::vector<std::string>& row, const std::optional<size_t>& col,
                   const char* what) -> std::optional<double> {
        if (!col || csv::is_missing(row[*col])) return std::nullopt;
        return csv::parse_double(row[*col], what);
    };

    size_t warned = 0;
    for (const auto& row : table.rows) {
        std::vector<std::string> fields = row;
        std::string warning;
        std::vector<double> estimates;
        std::string m1, m2, provenance;
        try {
            if (auto fwd = opt(row, c_fwd, "forward_flop")) {
                compute_est::ArchitectureCount arch;
                arch.forward_flop = *fwd;
                require(c_epochs && !csv::is_missing(row[*c_epochs]),
                        "forward_flop given without epochs");
                arch.epochs = csv::parse_double(row[*c_epochs], "epochs");
                arch.examples = opt(row, c_examples, "examples");
                arch.batches = opt(row, c_batches, "batches");
                arch.batch_size = opt(row, c_bs, "batch_size");
                const double flop = compute_est::estimate_method1(arch);
                estimates.push_back(flop);
                m1 = fmt(flop);
                provenance = "method1";
            }
            if (auto secs = opt(row, c_secs, "training_seconds")) {
                compute_est::HardwareCount hw;
                hw.training_seconds = *secs;
                require(c_cores && c_peak && !csv::is_missing(row[*c_cores]) &&
                            !csv::is_missing(row[*c_peak]),
                        "training_seconds given without cores/peak_flops");
                hw.cores = csv::parse_double(row[*c_cores], "cores");
                hw.peak_flops = csv::parse_double(row[*c_peak], "peak_flops");
                hw.utilization = opt(row, c_util, "utilization");
                const double flop = compute_est::estimate_method2(hw);
                estimates.push_back(flop);
                m2 = fmt(flop);
                provenance = provenance.empty() ? "method2" : "reconciled";
            }
            require(!estimates.empty(), "row carries neither architecture nor hardware fields");
            const compute_est::Reconciled rec = compute_est::reconcile(estimates);
            if (rec.spread_warning) {
                warning = "methods differ by " + fmt(rec.spread) + "x";
                ++warned;
            }
            fields.insert(fields.end(),
                          {m1, m2, fmt(rec.value), fmt(std::log(rec.value)), fmt(rec.spread),
                           provenance, warning});
        } catch (const ValidationError& e) {
            ++warned;
            fields.insert(fields.end(), {"", "", "", "", "", "", e.what()});
            run.warn("model '" + row[c_id] + "': " + e.what());
        }
        w.row(fields);
    }
    run.finish();
    std::cout << "compute-est: " << table.rows.size() << " rows, " << warned << " warning(s) -> "
              << run.dir().string() << '\n';
    return run.dir();
}

fs::path run_robustness(const Config& config, const io::IngestPaths& paths,
                        const std::string& mode, const std::string& model_id) {
    RunContext run("robustness-" + mode + "-" + model_id, config, ingest_inputs(paths));
    PreparedModel prep = prepare_model(config, paths, model_id);
    write_json_file(run.output_path("ingest_report.json"), report_to_json(prep.report));
    run.warn_all(prep.resolved.warnings);

    if (mode == "windows") {
        const std::vector<int> lengths = config.window_lengths();
        const auto rows = inference::window_sweep(prep.records, prep.plan.spec, lengths);
        std::ofstream out(run.output_path("windows.csv"));
        csv::Writer w(out);
        w.row({"model", "window_months", "estimator", "n", "beta", "beta_se", "gamma",
               "gamma_se", "log_likelihood", "error"});
        json summary = json::array();
        for (const auto& row : rows) {
            if (row.fit) {
                const auto& fit = *row.fit;
                w.row({model_id, std::to_string(row.window_months), fit.estimator,
                       std::to_string(fit.n), fmt(fit.coefficient(econ::kLogC)),
                       fmt(fit.se(econ::kLogC)), fmt(fit.coefficient(econ::kLogS)),
                       fmt(fit.se(econ::kLogS)), fmt(fit.log_likelihood), ""});
                json j = fit_to_json(fit);
                j["window_months"] = row.window_months;
                summary.push_back(j);
            } else {
                w.row({model_id, std::to_string(row.window_months), "", "", "", "", "", "", "",
                       row.error});
                summary.push_back(
                    {{"window_months", row.window_months}, {"error", row.error}});
                run.warn("window " + std::to_string(row.window_months) + ": " + row.error);
            }
        }
        write_json_file(run.output_path("summary.json"), summary);
    } else if (mode == "leavekout") {
        inference::RobustnessConfig cfg;
        cfg.k = config.leave_out_k();
        cfg.max_subsamples = config.max_subsamples();
        cfg.seed = derive_seed(config.seed(), "leavekout");
        cfg.threads = config.threads();
        const inference::LeaveKOutResult result =
            inference::leave_k_out(prep.records, prep.plan.spec, cfg);

        std::ofstream out(run.output_path("replicates.csv"));
        csv::Writer w(out);
        std::vector<std::string> header{"subsample", "removed"};
        header.insert(header.end(), result.coef_names.begin(), result.coef_names.end());
        w.row(header);
        for (size_t i = 0; i < result.estimates.size(); ++i) {
            std::string removed;
            for (size_t j = 0; j < result.removed[i].size(); ++j)
                removed += (j ? ";" : "") + std::to_string(result.removed[i][j]);
            std::vector<std::string> fields{std::to_string(i), removed};
            for (double v : result.estimates[i]) fields.push_back(fmt(v));
            w.row(fields);
        }
        json summary{{"model", model_id},
                     {"k", cfg.k},
                     {"exhaustive", result.exhaustive},
                     {"subsamples", result.estimates.size()}};
        for (size_t c = 0; c < result.coef_names.size(); ++c)
            summary["statistics"][result.coef_names[c]] = {{"median", result.medians[c]},
                                                           {"iqr", result.iqrs[c]}};
        write_json_file(run.output_path("summary.json"), summary);
    } else if (mode == "sigma") {
        inference::BootstrapConfig cfg;
        cfg.replicates = config.sigma_replicates();
        cfg.confidence = config.bootstrap_confidence();
        cfg.seed = derive_seed(config.seed(), "sigma");
        cfg.threads = config.threads();
        cfg.statistic = inference::Statistic::Sigma;
        const inference::BootstrapResult result =
            inference::bootstrap_bc(prep.records, prep.plan.spec, cfg);
        run.warn_all(result.warnings);

        {
            std::ofstream out(run.output_path("sigma_replicates.csv"));
            csv::Writer w(out);
            w.row({"replicate", "sigma"});
            for (size_t i = 0; i < result.replicates.size(); ++i)
                w.row({std::to_string(i), fmt(result.replicates[i])});
        }
        const inference::KdeResult density = inference::kde(result.replicates);
        {
            std::ofstream out(run.output_path("sigma_density.csv"));
            csv::Writer w(out);
            w.row({"sigma", "density"});
            for (size_t i = 0; i < density.grid.size(); ++i)
                w.row({fmt(density.grid[i]), fmt(density.density[i])});
        }
        std::vector<double> reps = result.replicates;
        write_json_file(run.output_path("summary.json"),
                        json{{"model", model_id},
                             {"point", result.point},
                             {"lower", result.lower},
                             {"upper", result.upper},
                             {"median", stats::median(std::move(reps))},
                             {"bandwidth", density.bandwidth},
                             {"replicates", cfg.replicates},
                             {"failed", result.failed}});
    } else {
        throw ValidationError("unknown robustness mode '" + mode +
                              "' (use leavekout, windows, or sigma)");
    }
    run.finish();
    std::cout << "robustness " << mode << " " << model_id << " -> " << run.dir().string()
              << '\n';
    return run.dir();
}

fs::path run_simulate(const Config& config, const SimulateOptions& options) {
    RunContext run("simulate", config, {});
    growth::GrowthParams params = options.params;
    params.validate();
    const double horizon = options.horizon > 0.0 ? options.horizon : 50.0 / params.n;

    dynamics::Trajectory traj;
    if (options.shock) {
        require(options.t_shock > 0.0, "shock requires t_shock > 0");
        traj = dynamics::shock_experiment(params, *options.shock, options.t_shock, horizon,
                                          options.step, options.stride);
    } else {
        const dynamics::EconomyState init =
            options.from_bgp ? dynamics::bgp_state(params) : options.init;
        traj = dynamics::simulate(params, init, horizon, options.step, options.stride);
    }

    {
        std::ofstream out(run.output_path("trajectory.csv"));
        traj.write_csv(out);
    }
    const growth::SteadyState ss =
        options.shock
            ? growth::steady_state_rates(options.shock->beta_prime, options.shock->gamma_prime,
                                         params.theta, params.n)
            : growth::steady_state(params);
    json summary{{"horizon", horizon},
                 {"step", options.step},
                 {"steady_state", {{"g_a", ss.g_a}, {"g_k", ss.g_k}}},
                 {"terminal",
                  {{"t", traj.back().t},
                   {"g_a", traj.back().g_a},
                   {"g_k", traj.back().g_k}}},
                 {"ok", traj.ok()}};
    if (!traj.ok()) summary["failure"] = *traj.failure;
    write_json_file(run.output_path("summary.json"), summary);
    run.finish();
    std::cout << "simulate: terminal g_a=" << traj.back().g_a << " g_k=" << traj.back().g_k
              << " (steady state " << ss.g_a << ", " << ss.g_k << ") -> " << run.dir().string()
              << '\n';
    if (!traj.ok()) throw NumericalError("integration failed: " + *traj.failure);
    return run.dir();
}

fs::path run_train_hc(const Config& config, const std::string& features_csv) {
    RunContext run("train-hc", config, {features_csv});
    const json& hc = config.hc();
    const csv::Table table = csv::read_file(features_csv);

    const std::vector<std::string> head_names = {"cit_t1", "cit_t2", "cit_t3", "cit_t5", "sjr"};
    const size_t c_id = table.column("id");
    const size_t c_date = table.column("date");
    std::vector<size_t> head_cols;
    for (const auto& name : head_names) head_cols.push_back(table.column(name));

    std::vector<size_t> feature_cols;
    std::vector<std::string> feature_names;
    for (size_t c = 0; c < table.header.size(); ++c) {
        if (c == c_id || c == c_date) continue;
        if (std::find(head_cols.begin(), head_cols.end(), c) != head_cols.end()) continue;
        feature_cols.push_back(c);
        feature_names.push_back(table.header[c]);
    }
    require(!feature_cols.empty(), "no feature columns found");

    const auto n = static_cast<Eigen::Index>(table.rows.size());
    require(n >= 10, "need at least 10 rows to train");
    hcnet::Batch full;
    full.features.resize(n, static_cast<Eigen::Index>(feature_cols.size()));
    full.dates.resize(n);
    full.targets.resize(n, static_cast<Eigen::Index>(head_names.size()));
    std::vector<std::string> ids;
    ids.reserve(static_cast<size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& row = table.rows[static_cast<size_t>(i)];
        ids.push_back(row[c_id]);
        full.dates(i) = years_since_2012(parse_iso_date(row[c_date]));
        for (size_t j = 0; j < feature_cols.size(); ++j)
            full.features(i, static_cast<Eigen::Index>(j)) =
                csv::parse_double(row[feature_cols[j]], feature_names[j]);
        for (size_t h = 0; h < head_names.size(); ++h) {
            const std::string& field = row[head_cols[h]];
            if (csv::is_missing(field)) {
                full.targets(i, static_cast<Eigen::Index>(h)) =
                    std::numeric_limits<double>::quiet_NaN();
                continue;
            }
            const double value = csv::parse_double(field, head_names[h]);
            // Citation counts are trained as log(1+count), venue SJR as log.
            if (head_names[h] == "sjr") {
                require(value > 0.0, "sjr must be > 0");
                full.targets(i, static_cast<Eigen::Index>(h)) = std::log(value);
            } else {
                require(value >= 0.0, "citation counts must be >= 0");
                full.targets(i, static_cast<Eigen::Index>(h)) = std::log1p(value);
            }
        }
    }

    // Holdout split before any training.
    const double holdout_fraction = hc.at("holdout_fraction").get<double>();
    require(holdout_fraction > 0.0 && holdout_fraction < 0.9, "bad holdout_fraction");
    std::vector<Eigen::Index> order(static_cast<size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    Rng split_rng(derive_seed(config.seed(), "hc_split"));
    split_rng.shuffle(order);
    const auto n_holdout = static_cast<Eigen::Index>(
        std::max<double>(1.0, std::floor(holdout_fraction * static_cast<double>(n))));
    const Eigen::Index n_train = n - n_holdout;
    require(n_train >= 4, "training split too small");

    auto subset = [&](Eigen::Index begin, Eigen::Index count) {
        hcnet::Batch b;
        b.features.resize(count, full.features.cols());
        b.dates.resize(count);
        b.targets.resize(count, full.targets.cols());
        for (Eigen::Index i = 0; i < count; ++i) {
            const Eigen::Index row = order[static_cast<size_t>(begin + i)];
            b.features.row(i) = full.features.row(row);
            b.dates(i) = full.dates(row);
            b.targets.row(i) = full.targets.row(row);
        }
        return b;
    };
    const hcnet::Batch train_set = subset(0, n_train);
    const hcnet::Batch holdout = subset(n_train, n_holdout);

    hcnet::HCNetworkSpec spec;
    spec.input_dim = static_cast<int>(feature_cols.size());
    spec.encoder_layers = hc.at("encoder_layers").get<std::vector<int>>();
    if (!hc.at("batch_norm").get<bool>())
        spec.batch_norm.assign(spec.encoder_layers.size(), false);
    spec.heads = head_names;
    spec.frozen_prefix = hc.at("frozen_prefix").get<int>();
    hcnet::HCNetwork net(spec, derive_seed(config.seed(), "hc_init"));

    std::vector<hcnet::TrainStep> schedule;
    for (const auto& step : hc.at("schedule")) {
        hcnet::TrainStep ts;
        ts.active_heads = step.at("heads").get<std::vector<std::string>>();
        ts.batch_size = step.at("batch_size").get<int>();
        ts.learning_rate = step.at("learning_rate").get<double>();
        ts.epochs = step.at("epochs").get<int>();
        schedule.push_back(std::move(ts));
    }
    hcnet::Adamax optimizer;
    const hcnet::TrainHistory history =
        hcnet::train(net, optimizer, train_set, schedule, derive_seed(config.seed(), "hc_train"));
    if (history.diverged) run.warn("training halted: " + history.note);

    // Standardize the human-capital activations over the training corpus.
    const Eigen::VectorXd train_hc = net.extract_hc(train_set.features);
    const double mean = train_hc.mean();
    const double sd = std::sqrt((train_hc.array() - mean).square().sum() /
                                std::max<double>(1.0, static_cast<double>(train_hc.size() - 1)));
    net.set_hc_standardization(mean, sd > 0.0 ? sd : 1.0);

    {
        std::ofstream out(run.output_path("hcnet.bin"), std::ios::binary);
        net.save(out);
    }

    // Holdout metrics per head (on the transformed targets).
    json holdout_metrics = json::object();
    const hcnet::ForwardResult eval = net.forward(holdout.features, holdout.dates,
                                                  hcnet::Mode::Eval);
    for (size_t h = 0; h < head_names.size(); ++h) {
        const auto col = static_cast<Eigen::Index>(h);
        std::vector<double> pred, truth;
        for (Eigen::Index i = 0; i < holdout.targets.rows(); ++i) {
            if (std::isnan(holdout.targets(i, col))) continue;
            pred.push_back(eval.head_out(i, col));
            truth.push_back(holdout.targets(i, col));
        }
        if (pred.size() < 3) continue;
        const double mean_t = stats::mean(truth);
        double sse = 0.0, sst = 0.0;
        for (size_t i = 0; i < pred.size(); ++i) {
            sse += (pred[i] - truth[i]) * (pred[i] - truth[i]);
            sst += (truth[i] - mean_t) * (truth[i] - mean_t);
        }
        holdout_metrics[head_names[h]] = {{"n", pred.size()},
                                          {"r2", sst > 0.0 ? 1.0 - sse / sst : 0.0}};
    }

    {
        std::ofstream out(run.output_path("activations.csv"));
        csv::Writer w(out);
        w.row({"id", "hc_raw", "hc_standardized"});
        const Eigen::VectorXd raw = net.extract_hc(full.features);
        const Eigen::VectorXd standardized = net.standardize_hc(raw);
        for (Eigen::Index i = 0; i < n; ++i)
            w.row({ids[static_cast<size_t>(i)], fmt(raw(i)), fmt(standardized(i))});
    }

    json history_json{{"diverged", history.diverged},
                      {"holdout", holdout_metrics},
                      {"hc_mean", net.hc_mean()},
                      {"hc_sd", net.hc_sd()},
                      {"n_train", n_train},
                      {"n_holdout", n_holdout}};
    history_json["epoch_losses"] = history.epoch_losses;
    write_json_file(run.output_path("history.json"), history_json);

    run.finish();
    std::cout << "train-hc: " << n_train << " train / " << n_holdout << " holdout rows -> "
              << run.dir().string() << '\n';
    return run.dir();
}

}  // namespace dlgrowth::pipeline
