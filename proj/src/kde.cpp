#include <algorithm>
#include <cmath>

#include "dlgrowth/errors.hpp"
#include "dlgrowth/inference.hpp"
#include "dlgrowth/stats.hpp"

namespace dlgrowth::inference {

KdeResult kde(std::span<const double> values, std::optional<double> bandwidth, int grid_points) {
    require(values.size() >= 2, "kde needs at least 2 values");
    require(grid_points >= 16, "kde grid too small");
    const double lo_val = *std::min_element(values.begin(), values.end());
    const double hi_val = *std::max_element(values.begin(), values.end());
    if (lo_val == hi_val) throw NumericalError("kde degenerate: all values equal");

    KdeResult out;
    if (bandwidth) {
        require(*bandwidth > 0.0, "bandwidth must be > 0");
        out.bandwidth = *bandwidth;
    } else {
        const double sd = stats::sample_sd(values);
        const double spread_iqr =
            stats::iqr(std::vector<double>(values.begin(), values.end())) / 1.34;
        double spread = sd;
        if (spread_iqr > 0.0) spread = std::min(sd, spread_iqr);
        out.bandwidth =
            0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
        if (out.bandwidth <= 0.0) throw NumericalError("kde degenerate: zero bandwidth");
    }

    const double h = out.bandwidth;
    const double lo = lo_val - 4.0 * h;
    const double hi = hi_val + 4.0 * h;
    const double dx = (hi - lo) / static_cast<double>(grid_points - 1);
    out.grid.resize(static_cast<size_t>(grid_points));
    out.density.resize(static_cast<size_t>(grid_points));
    const double norm = 1.0 / (h * static_cast<double>(values.size()));
    for (int i = 0; i < grid_points; ++i) {
        const double x = lo + dx * static_cast<double>(i);
        double sum = 0.0;
        for (double v : values) sum += stats::normal_pdf((x - v) / h);
        out.grid[static_cast<size_t>(i)] = x;
        out.density[static_cast<size_t>(i)] = sum * norm;
    }
    return out;
}

}  // namespace dlgrowth::inference
