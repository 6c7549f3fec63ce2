#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "dlgrowth/dataset.hpp"
#include "dlgrowth/errors.hpp"

using namespace dlgrowth;
using namespace dlgrowth::io;

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("dlgrowth-test-" + std::to_string(::getpid()) + "-" +
                std::to_string(counter()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
    static int counter() {
        static int c = 0;
        return ++c;
    }
    std::string write(const std::string& name, const std::string& content) const {
        const auto file = path / name;
        std::ofstream out(file);
        out << content;
        return file.string();
    }
};

const char* kExperimentsHeader =
    "task,date,performance,metric_direction,model_id,log_compute,log_human_capital,"
    "extra_data,reimplementation\n";
const char* kBaselinesHeader = "task,date,performance,metric_direction\n";
const char* kComputeHeader =
    "model_id,forward_flop,epochs,examples,batches,batch_size,training_seconds,cores,"
    "peak_flops,utilization\n";

}  // namespace

TEST_CASE("ingest happy path with both compute routes") {
    TempDir dir;
    IngestPaths paths;
    paths.experiments = dir.write(
        "experiments.csv",
        std::string(kExperimentsHeader) +
            "vision,2015-06-01,0.8,accuracy,,41.0,3.0,0,0\n"
            "vision,2015-07-01,0.25,error,m1,,2.5,1,0\n");
    paths.baselines = dir.write("baselines.csv", std::string(kBaselinesHeader) +
                                                     "vision,2015-03-01,0.7,accuracy\n"
                                                     "vision,2015-04-01,0.72,accuracy\n");
    paths.compute_inputs =
        dir.write("compute.csv", std::string(kComputeHeader) +
                                     "m1,2e9,90,1.28e6,,,172800,5,1e13,0.3\n");

    const IngestResult result = ingest(paths);
    CHECK(result.report.rows_in == 5);
    CHECK(result.report.rows_used == 5);
    CHECK(result.report.quarantined.empty());
    REQUIRE(result.bundle.experiments.size() == 2);
    // Error-rate metric converted to accuracy.
    CHECK(result.bundle.experiments[1].performance == doctest::Approx(0.75));

    const ResolvedDataset resolved = resolve_records(result.bundle, 12);
    REQUIRE(resolved.resolved.size() == 2);
    CHECK(resolved.resolved[0].compute_provenance == "direct");
    CHECK(resolved.resolved[1].compute_provenance == "reconciled");
    CHECK(resolved.resolved[0].baseline == doctest::Approx(0.7));  // lower-middle median
    // gtilde positive for scores above the baseline.
    CHECK(resolved.resolved[0].record.gtilde > 0.0);
}

TEST_CASE("row-level violations are quarantined, never dropped silently") {
    TempDir dir;
    IngestPaths paths;
    paths.experiments = dir.write(
        "experiments.csv",
        std::string(kExperimentsHeader) +
            "vision,2015-06-01,1.0,accuracy,,41.0,3.0,0,0\n"     // performance = 1
            "vision,2015-13-01,0.8,accuracy,,41.0,3.0,0,0\n"     // bad date
            "vision,2015-06-01,0.8,sideways,,41.0,3.0,0,0\n"     // bad direction
            "vision,2015-06-01,0.8,accuracy,,41.0,3.0,2,0\n"     // bad flag
            "unknown,2015-06-01,0.8,accuracy,,41.0,3.0,0,0\n"    // no baselines
            "vision,2015-06-01,0.8,accuracy,nope,,3.0,0,0\n"     // unknown model id
            "vision,2015-06-01,0.8,accuracy,,41.0,3.0,0,0\n");   // fine
    paths.baselines = dir.write("baselines.csv", std::string(kBaselinesHeader) +
                                                     "vision,2015-03-01,0.7,accuracy\n");
    const IngestResult result = ingest(paths);
    CHECK(result.report.rows_in == 8);
    CHECK(result.report.rows_used == 2);
    REQUIRE(result.report.quarantined.size() == 6);
    CHECK(result.report.rows_used + result.report.quarantined.size() ==
          result.report.rows_in);
    CHECK(result.report.quarantined[0].reason.find("logistic domain") != std::string::npos);
}

TEST_CASE("missing required columns are structural errors") {
    TempDir dir;
    IngestPaths paths;
    paths.experiments = dir.write("experiments.csv",
                                  "task,date,performance,model_id,log_compute,"
                                  "log_human_capital,extra_data,reimplementation\n");
    paths.baselines = dir.write("baselines.csv", kBaselinesHeader);
    // metric_direction column absent entirely.
    CHECK_THROWS_AS(ingest(paths), ValidationError);
}

TEST_CASE("empty files give an empty bundle and a zero-row report") {
    TempDir dir;
    IngestPaths paths;
    paths.experiments = dir.write("experiments.csv", kExperimentsHeader);
    paths.baselines = dir.write("baselines.csv", kBaselinesHeader);
    const IngestResult result = ingest(paths);
    CHECK(result.report.rows_in == 0);
    CHECK(result.bundle.experiments.empty());
}

TEST_CASE("missing baseline for the record's period fails resolution") {
    TempDir dir;
    IngestPaths paths;
    paths.experiments =
        dir.write("experiments.csv", std::string(kExperimentsHeader) +
                                         "vision,2018-06-01,0.8,accuracy,,41.0,3.0,0,0\n");
    paths.baselines = dir.write("baselines.csv", std::string(kBaselinesHeader) +
                                                     "vision,2015-03-01,0.7,accuracy\n");
    const IngestResult result = ingest(paths);
    REQUIRE(result.bundle.experiments.size() == 1);
    // Task-level survey exists (row passes ingest) but the 2018 period has
    // no contemporaneous baselines; no borrowing across periods.
    CHECK_THROWS_AS(resolve_records(result.bundle, 12), ValidationError);
}
