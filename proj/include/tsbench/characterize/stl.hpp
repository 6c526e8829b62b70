#pragma once

#include "tsbench/core/error.hpp"

#include <span>
#include <vector>

namespace tsbench {

/// Additive decomposition: input == trend + seasonal + remainder, exactly
/// (the remainder is computed as the residual).
struct Decomposition {
    std::vector<double> trend;
    std::vector<double> seasonal;
    std::vector<double> remainder;
};

struct StlOptions {
    int seasonal_span = 7; // loess span over cycle-subseries points, odd
    int inner_iterations = 2;
    int outer_iterations = 1; // robustness weight updates
};

/// Locally weighted regression smoother with tricube neighbourhood weights.
/// Evaluates at every integer position 0..n-1. `span` is a point count
/// (extended proportionally when span > n), degree is 0 or 1.
std::vector<double> loess_smooth(std::span<const double> values, int span, int degree,
                                 std::span<const double> robustness_weights = {});

/// Seasonal-trend decomposition by loess. Requires T >= 2*period + 1 for
/// period >= 2. For period < 2 the series is treated as non-seasonal: the
/// trend is a loess smooth (span = smallest odd >= 0.75*T, degree 1) and the
/// seasonal component is identically zero.
Decomposition stl_decompose(std::span<const double> values, int period,
                            const StlOptions& options = {});

} // namespace tsbench
