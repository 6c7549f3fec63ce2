#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace dlgrowth::stats {

double normal_pdf(double x);
double normal_cdf(double x);
double normal_quantile(double p);  // Phi^-1, p in (0,1)

// Upper tail P(X >= x) for X ~ chi-square(df).
double chi2_sf(double x, double df);

double mean(std::span<const double> v);
double sample_sd(std::span<const double> v);

// Type-7 quantile (linear interpolation) of an already sorted vector.
double quantile_sorted(std::span<const double> sorted, double p);

double median(std::vector<double> v);        // by copy+sort
double iqr(std::vector<double> v);           // q75 - q25, type-7

// Lower-of-two-middles median: always an element of the input.
double median_lower(std::vector<double> v);

}  // namespace dlgrowth::stats
