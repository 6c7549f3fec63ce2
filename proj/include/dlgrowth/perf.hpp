#pragma once

#include <span>
#include <string>

#include "dlgrowth/dates.hpp"

namespace dlgrowth::perf {

// Logistic performance-technology map: A = p/(1-p). Requires p strictly
// inside (0,1); p = 1 would mean infinite technology.
double perf_to_tech(double p);

// Inverse map P = a/(1+a), a > 0.
double tech_to_perf(double a);

struct PerformancePair {
    double p_new = 0.0;
    double p_baseline = 0.0;
    std::string task;
    CivilDate date;

    void validate() const;
};

// Innovation proxy: log proportional accuracy gain plus log proportional
// error reduction. Equals log perf_to_tech(p_new) - log perf_to_tech(p_base).
double gtilde(const PerformancePair& pair);
double gtilde(double p_new, double p_baseline);

// Median of the contemporaneous baseline survey for (task, period). With an
// even count the lower of the two middle values is returned, so the baseline
// is always an actually observed score. Empty survey -> missing-baseline.
double baseline_for(const std::string& task, const std::string& period,
                    std::span<const double> survey);

}  // namespace dlgrowth::perf
