#include "dlgrowth/stats.hpp"

#include <algorithm>
#include <cmath>

#include <boost/math/distributions/chi_squared.hpp>
#include <boost/math/distributions/normal.hpp>

#include "dlgrowth/errors.hpp"

namespace dlgrowth::stats {

namespace {
const boost::math::normal_distribution<double> kStdNormal(0.0, 1.0);
}

double normal_pdf(double x) { return boost::math::pdf(kStdNormal, x); }

double normal_cdf(double x) { return boost::math::cdf(kStdNormal, x); }

double normal_quantile(double p) {
    require(p > 0.0 && p < 1.0, "normal quantile requires p in (0,1)");
    return boost::math::quantile(kStdNormal, p);
}

double chi2_sf(double x, double df) {
    require(df > 0.0, "chi-square requires df > 0");
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared_distribution<double> dist(df);
    return boost::math::cdf(boost::math::complement(dist, x));
}

double mean(std::span<const double> v) {
    require(!v.empty(), "mean of empty sample");
    double s = 0.0;
    for (double x : v) s += x;
    return s / static_cast<double>(v.size());
}

double sample_sd(std::span<const double> v) {
    require(v.size() >= 2, "sample sd needs n >= 2");
    const double m = mean(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

double quantile_sorted(std::span<const double> sorted, double p) {
    require(!sorted.empty(), "quantile of empty sample");
    require(p >= 0.0 && p <= 1.0, "quantile requires p in [0,1]");
    if (sorted.size() == 1) return sorted[0];
    const double h = p * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<size_t>(std::floor(h));
    const auto hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, 0.5);
}

double iqr(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return quantile_sorted(v, 0.75) - quantile_sorted(v, 0.25);
}

double median_lower(std::vector<double> v) {
    require(!v.empty(), "median of empty sample");
    std::sort(v.begin(), v.end());
    return v[(v.size() - 1) / 2];
}

}  // namespace dlgrowth::stats
