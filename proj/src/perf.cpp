#include "dlgrowth/perf.hpp"

#include <cmath>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/stats.hpp"

namespace dlgrowth::perf {

double perf_to_tech(double p) {
    require(std::isfinite(p) && p > 0.0 && p < 1.0,
            "performance must lie strictly inside (0,1)");
    return p / (1.0 - p);
}

double tech_to_perf(double a) {
    require(std::isfinite(a) && a > 0.0, "technology level must be > 0");
    return a / (1.0 + a);
}

void PerformancePair::validate() const {
    require(std::isfinite(p_new) && p_new > 0.0 && p_new < 1.0,
            "new score must lie strictly inside (0,1)");
    require(std::isfinite(p_baseline) && p_baseline > 0.0 && p_baseline < 1.0,
            "baseline score must lie strictly inside (0,1)");
}

double gtilde(double p_new, double p_baseline) {
    PerformancePair pair;
    pair.p_new = p_new;
    pair.p_baseline = p_baseline;
    return gtilde(pair);
}

double gtilde(const PerformancePair& pair) {
    pair.validate();
    return std::log(pair.p_new / pair.p_baseline) +
           std::log((1.0 - pair.p_baseline) / (1.0 - pair.p_new));
}

double baseline_for(const std::string& task, const std::string& period,
                    std::span<const double> survey) {
    if (survey.empty())
        throw ValidationError("missing baseline: no survey scores for task '" + task +
                              "' in period " + period);
    return stats::median_lower(std::vector<double>(survey.begin(), survey.end()));
}

}  // namespace dlgrowth::perf
