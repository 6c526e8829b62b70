#pragma once

#include "tsbench/characterize/features.hpp"
#include "tsbench/characterize/stl.hpp"
#include "tsbench/core/series.hpp"

#include <optional>
#include <span>
#include <vector>

namespace tsbench {

/// The six dataset characteristics. Correlation is only defined for
/// multivariate input and stays empty for a single channel.
struct CharacteristicProfile {
    double trend_strength = 0.0;      // [0, 1]
    double seasonality_strength = 0.0; // [0, 1]
    bool stationary = false;
    double adf_pvalue = 1.0;          // [0, 1]
    double shifting = 0.0;            // [0, 1]
    double transition = 0.0;          // [0, 1/3]
    std::optional<double> correlation; // (-1, 2]
};

/// Explained-variance ratio of the trend component, clamped to [0, 1]:
/// max(0, 1 - var(remainder) / var(values - seasonal)). A zero denominator
/// yields 0 by convention.
double trend_strength(std::span<const double> values, int period);
double trend_strength(const Decomposition& dec, std::span<const double> values);

/// max(0, 1 - var(remainder) / var(values - trend)), clamped to [0, 1].
double seasonality_strength(std::span<const double> values, int period);
double seasonality_strength(const Decomposition& dec, std::span<const double> values);

/// Threshold-median shifting score in [0, 1].
/// Z-scores the series, sweeps m thresholds from min to max, takes the median
/// 1-based index of the points strictly above each threshold, min-max
/// normalizes those medians and returns their median. Thresholds that leave
/// no point above them are skipped; if all medians coincide the score is 0.
double shifting_value(std::span<const double> values, int threshold_count = 100);

/// Symbol-transition score in [0, 1/3].
/// Downsamples by the first zero-crossing lag of the ACF, maps points to 3
/// equiprobable rank bins (ties broken by position), accumulates the 3x3
/// transition-count matrix scaled by 1/T', and returns the trace of the
/// population covariance matrix of its columns.
double transition_value(std::span<const double> values);

/// Pairwise-feature correlation score in (-1, 2]:
/// mean of Pearson coefficients between per-channel feature vectors plus
/// 1 / (1 + population variance of those coefficients).
/// Channels whose feature vector is constant make Pearson undefined; pairs
/// touching them are skipped. `standardize_features` optionally z-scores each
/// feature across channels first.
double correlation_score(const Dataset& dataset, bool standardize_features = false);

/// Greedy explained-variance selection: sorts by descending variance and
/// keeps series until cumulative variance / total variance >= threshold.
/// Always selects at least one. Returns indices into the input collection.
std::vector<std::size_t> pfa_select(const std::vector<TimeSeries>& collection,
                                    double threshold);

struct ClassificationThresholds {
    double trend = 0.5;
    double seasonality = 0.5;
    double shifting = 0.5;
    double transition = 1.0 / 6.0;
};

struct CharacteristicFlags {
    bool seasonality = false;
    bool trend = false;
    bool shifting = false;
    bool transition = false;
    bool stationarity = false;
};

/// Inclusive >= comparisons against the thresholds; stationarity passes
/// through the boolean unchanged.
CharacteristicFlags classify_characteristics(const CharacteristicProfile& profile,
                                             const ClassificationThresholds& thresholds = {});

/// Median-split thresholds over a collection of profiles: trend/seasonality
/// keep the 0.5 default, shifting and transition use the collection medians.
ClassificationThresholds thresholds_from_collection(
    const std::vector<CharacteristicProfile>& profiles);

/// All six scores for one channel (correlation left empty).
CharacteristicProfile profile_series(const TimeSeries& series);

/// Dataset-level profile: per-channel scores averaged, stationarity by
/// majority vote, correlation filled when N >= 2.
CharacteristicProfile profile_dataset(const Dataset& dataset);

} // namespace tsbench
