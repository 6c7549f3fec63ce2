#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dlgrowth/compute_est.hpp"
#include "dlgrowth/dates.hpp"
#include "dlgrowth/econ.hpp"

namespace dlgrowth::io {

// One validated experiment row. Performance is stored in accuracy direction
// (error-rate metrics are converted to 1 - error at ingestion).
struct ExperimentRow {
    std::string task;
    CivilDate date;
    double performance = 0.0;
    std::string model_id;  // may be empty when log_compute is given directly
    std::optional<double> log_compute;
    double log_human_capital = 0.0;
    bool extra_data = false;
    bool reimplementation = false;
};

struct BaselineRow {
    std::string task;
    CivilDate date;
    double score = 0.0;  // accuracy direction
};

struct ComputeRow {
    std::string model_id;
    std::optional<compute_est::ArchitectureCount> arch;
    std::optional<compute_est::HardwareCount> hw;
};

struct QuarantinedRow {
    std::string file;
    size_t line = 0;  // 1-based data row number
    std::string reason;
};

struct IngestReport {
    size_t rows_in = 0;
    size_t rows_used = 0;
    std::vector<QuarantinedRow> quarantined;
    std::vector<std::string> warnings;
};

struct DatasetBundle {
    std::vector<ExperimentRow> experiments;
    std::vector<BaselineRow> baselines;
    std::map<std::string, ComputeRow> compute_inputs;
};

struct IngestPaths {
    std::string experiments;
    std::string baselines;
    std::string compute_inputs;  // optional
};

struct IngestResult {
    DatasetBundle bundle;
    IngestReport report;
};

// Reads and validates the bundle. Structural problems (missing files or
// required columns) throw; per-row violations are quarantined into the
// report, never silently dropped: rows in = rows used + rows quarantined.
IngestResult ingest(const IngestPaths& paths);

struct ResolvedRecord {
    econ::ExperimentRecord record;
    double baseline = 0.0;
    std::string compute_provenance;  // "direct", "method1", "method2", "reconciled"
    bool spread_warning = false;
};

struct ResolvedDataset {
    std::vector<ResolvedRecord> resolved;
    std::vector<std::string> warnings;

    std::vector<econ::ExperimentRecord> records() const;
};

// Builds estimation-ready records: baseline = contemporaneous survey median
// for the record's (task, period) under the window rule, gtilde from the
// logistic transform, and log compute either direct or from the Appendix-E
// style estimators (reconciled geometrically when both are available).
// Optionally restricts to a task subset.
ResolvedDataset resolve_records(const DatasetBundle& bundle, int window_months,
                                const std::vector<std::string>& task_filter = {});

}  // namespace dlgrowth::io
