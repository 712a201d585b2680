#pragma once

#include <vector>

namespace acnsf {

struct FitResult {
    double slope = 0.0;
    double intercept = 0.0;
    double stderr_slope = 0.0;  // zero when only 2 points
    double ci95 = 0.0;          // 2 * stderr_slope
};

/// Least-squares line through (x, y); needs at least 2 points.
FitResult linear_fit(const std::vector<double>& x, const std::vector<double>& y);

/// Line through (log x, log y); all entries must be positive.
FitResult loglog_fit(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace acnsf
