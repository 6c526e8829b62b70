#pragma once

#include "tsbench/core/error.hpp"

#include <array>
#include <span>
#include <string>

namespace tsbench {

inline constexpr std::size_t kFeatureCount = 22;

/// Fixed-order summary vector used as a per-channel representation when
/// scoring cross-channel correlation. The set below is frozen; entries are
/// deterministic and finite, with degenerate inputs mapping to 0.
///
///  0 mean                    arithmetic mean
///  1 variance                population variance
///  2 acf_lag1                autocorrelation, lag 1
///  3 acf_lag2                autocorrelation, lag 2
///  4 acf_first_zero          first non-positive ACF lag (capped)
///  5 transition_variance     trace of symbol-transition covariance
///  6 skewness                population skewness
///  7 excess_kurtosis         population kurtosis minus 3
///  8 median                  middle order statistic
///  9 interquartile_range     q75 - q25, linear-interpolated quantiles
/// 10 minimum
/// 11 maximum
/// 12 longest_above_mean      longest run above mean / T
/// 13 longest_below_mean      longest run below mean / T
/// 14 mean_abs_change         mean |x[t+1] - x[t]|
/// 15 positive_change_ratio   fraction of strictly increasing steps
/// 16 mean_crossing_rate      mean crossings / (T-1)
/// 17 acf_sum_10              sum of ACF over lags 1..10
/// 18 change_asymmetry        mean(d^3) / mean(d^2)^1.5 of first differences
/// 19 segment_mean_spread     std of 5 segment means / series std
/// 20 segment_std_spread      std of 5 segment stds / series std
/// 21 large_change_ratio      fraction of |x[t+1]-x[t]| > series std
struct FeatureVector {
    std::array<double, kFeatureCount> features{};
};

inline constexpr std::size_t kFeatureIndexAcfFirstZero = 4;
inline constexpr std::size_t kFeatureIndexTransition = 5;

const std::array<std::string, kFeatureCount>& feature_names();

/// Errors: TooShort (T < 20). A constant series yields the all-zero sentinel.
FeatureVector feature_vector(std::span<const double> values);

} // namespace tsbench
