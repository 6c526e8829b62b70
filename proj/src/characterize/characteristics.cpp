#include "tsbench/characterize/characteristics.hpp"

#include "tsbench/characterize/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsbench {

namespace {

double strength_ratio(const std::vector<double>& remainder,
                      const std::vector<double>& deseasonalized) {
    const double var_r = population_variance(remainder);
    const double var_d = population_variance(deseasonalized);
    if (var_d <= 0.0) return 0.0; // zero-denominator convention
    return std::clamp(1.0 - var_r / var_d, 0.0, 1.0);
}

} // namespace

double trend_strength(const Decomposition& dec, std::span<const double> values) {
    std::vector<double> detrended(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        detrended[i] = values[i] - dec.seasonal[i];
    }
    return strength_ratio(dec.remainder, detrended);
}

double trend_strength(std::span<const double> values, int period) {
    return trend_strength(stl_decompose(values, period), values);
}

double seasonality_strength(const Decomposition& dec, std::span<const double> values) {
    std::vector<double> deseasonalized(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        deseasonalized[i] = values[i] - dec.trend[i];
    }
    return strength_ratio(dec.remainder, deseasonalized);
}

double seasonality_strength(std::span<const double> values, int period) {
    return seasonality_strength(stl_decompose(values, period), values);
}

double shifting_value(std::span<const double> values, int threshold_count) {
    const std::size_t n = values.size();
    if (n < 3 || threshold_count < 2) {
        throw Error(ErrorCode::TooShort, "shifting_value needs T >= 3 and m >= 2");
    }
    const double m = mean_of(values);
    const double var = population_variance(values);
    if (var <= 0.0) {
        throw Error(ErrorCode::DegenerateVariance, "shifting_value of constant series");
    }
    const double sd = std::sqrt(var);
    std::vector<double> z(n);
    for (std::size_t i = 0; i < n; ++i) z[i] = (values[i] - m) / sd;
    const auto [zmin_it, zmax_it] = std::minmax_element(z.begin(), z.end());
    const double zmin = *zmin_it, zmax = *zmax_it;

    std::vector<double> medians;
    for (int i = 1; i <= threshold_count; ++i) {
        const double threshold =
            zmin + static_cast<double>(i - 1) * (zmax - zmin) / threshold_count;
        std::vector<double> indices; // 1-based positions above the threshold
        for (std::size_t j = 0; j < n; ++j) {
            if (z[j] > threshold) indices.push_back(static_cast<double>(j + 1));
        }
        if (indices.empty()) continue;
        medians.push_back(median_of(std::move(indices)));
    }

    const auto [lo_it, hi_it] = std::minmax_element(medians.begin(), medians.end());
    const double lo = *lo_it, hi = *hi_it;
    if (hi <= lo) return 0.0; // all medians coincide
    for (double& v : medians) v = (v - lo) / (hi - lo);
    return median_of(std::move(medians));
}

double transition_value(std::span<const double> values) {
    const std::size_t stride = first_zero_acf(values);
    std::vector<double> down;
    for (std::size_t i = 0; i < values.size(); i += stride) down.push_back(values[i]);
    const std::size_t m = down.size();
    if (m < 6) {
        throw Error(ErrorCode::TooShortAfterDownsample,
                    "downsampled length " + std::to_string(m) + " < 6");
    }

    // equiprobable 3-letter symbolization via ranks, ties broken by position
    std::vector<std::size_t> order(m);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&down](std::size_t a, std::size_t b) { return down[a] < down[b]; });
    std::vector<int> symbol(m);
    for (std::size_t rank = 0; rank < m; ++rank) {
        symbol[order[rank]] = std::min(static_cast<int>(rank * 3 / m), 2);
    }

    double counts[3][3] = {};
    for (std::size_t j = 0; j + 1 < m; ++j) {
        counts[symbol[j]][symbol[j + 1]] += 1.0;
    }
    const double scale = 1.0 / static_cast<double>(m);
    double trace = 0.0;
    for (int col = 0; col < 3; ++col) {
        double column[3] = {counts[0][col] * scale, counts[1][col] * scale,
                            counts[2][col] * scale};
        const double mean = (column[0] + column[1] + column[2]) / 3.0;
        double var = 0.0;
        for (double v : column) var += (v - mean) * (v - mean);
        trace += var / 3.0;
    }
    return trace;
}

double correlation_score(const Dataset& dataset, bool standardize_features) {
    const std::size_t n_channels = dataset.channel_count();
    if (n_channels < 2) {
        throw Error(ErrorCode::Univariate, "correlation needs N >= 2 channels");
    }
    std::vector<std::array<double, kFeatureCount>> feats;
    feats.reserve(n_channels);
    for (const auto& channel : dataset.channels) {
        feats.push_back(feature_vector(channel.values).features);
    }
    if (standardize_features) {
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            std::vector<double> column(n_channels);
            for (std::size_t c = 0; c < n_channels; ++c) column[c] = feats[c][f];
            const double m = mean_of(column);
            const double sd = std::sqrt(population_variance(column));
            for (std::size_t c = 0; c < n_channels; ++c) {
                feats[c][f] = sd > 0.0 ? (feats[c][f] - m) / sd : 0.0;
            }
        }
    }

    std::vector<bool> degenerate(n_channels);
    for (std::size_t c = 0; c < n_channels; ++c) {
        degenerate[c] = population_variance(feats[c]) <= 0.0;
    }

    std::vector<double> coefficients;
    for (std::size_t i = 0; i < n_channels; ++i) {
        for (std::size_t j = i + 1; j < n_channels; ++j) {
            if (degenerate[i] || degenerate[j]) continue;
            coefficients.push_back(pearson_correlation(feats[i], feats[j]));
        }
    }
    if (coefficients.empty()) {
        throw Error(ErrorCode::DegenerateFeatures,
                    "no channel pair has non-constant feature vectors");
    }
    return mean_of(coefficients) + 1.0 / (1.0 + population_variance(coefficients));
}

std::vector<std::size_t> pfa_select(const std::vector<TimeSeries>& collection,
                                    double threshold) {
    if (collection.empty()) {
        throw Error(ErrorCode::EmptyCollection, "pfa_select on empty collection");
    }
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw Error(ErrorCode::SchemaError, "pfa threshold must lie in (0, 1]");
    }
    std::vector<std::size_t> order(collection.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> variances(collection.size());
    for (std::size_t i = 0; i < collection.size(); ++i) {
        variances[i] = population_variance(collection[i].values);
    }
    std::stable_sort(order.begin(), order.end(), [&variances](std::size_t a, std::size_t b) {
        return variances[a] > variances[b];
    });
    const double total = std::accumulate(variances.begin(), variances.end(), 0.0);
    if (total <= 0.0) {
        return {order.front()};
    }
    std::vector<std::size_t> selected;
    double cumulative = 0.0;
    for (std::size_t idx : order) {
        selected.push_back(idx);
        cumulative += variances[idx];
        if (cumulative / total >= threshold) break;
    }
    return selected;
}

CharacteristicFlags classify_characteristics(const CharacteristicProfile& profile,
                                             const ClassificationThresholds& thresholds) {
    CharacteristicFlags flags;
    flags.trend = profile.trend_strength >= thresholds.trend;
    flags.seasonality = profile.seasonality_strength >= thresholds.seasonality;
    flags.shifting = profile.shifting >= thresholds.shifting;
    flags.transition = profile.transition >= thresholds.transition;
    flags.stationarity = profile.stationary;
    return flags;
}

ClassificationThresholds thresholds_from_collection(
    const std::vector<CharacteristicProfile>& profiles) {
    ClassificationThresholds thresholds;
    if (profiles.empty()) return thresholds;
    std::vector<double> shifting, transition;
    for (const auto& p : profiles) {
        shifting.push_back(p.shifting);
        transition.push_back(p.transition);
    }
    thresholds.shifting = median_of(std::move(shifting));
    thresholds.transition = median_of(std::move(transition));
    return thresholds;
}

CharacteristicProfile profile_series(const TimeSeries& series) {
    CharacteristicProfile profile;
    const auto& v = series.values;
    const Decomposition dec = stl_decompose(v, series.seasonal_period);
    profile.trend_strength = trend_strength(dec, v);
    profile.seasonality_strength = seasonality_strength(dec, v);
    profile.adf_pvalue = adf_pvalue(v);
    profile.stationary = profile.adf_pvalue <= 0.05;
    profile.shifting = shifting_value(v);
    profile.transition = transition_value(v);
    return profile;
}

CharacteristicProfile profile_dataset(const Dataset& dataset) {
    dataset.validate();
    CharacteristicProfile aggregate;
    double trend = 0.0, season = 0.0, shift = 0.0, trans = 0.0, adf = 0.0;
    std::size_t stationary_votes = 0;
    for (const auto& channel : dataset.channels) {
        const CharacteristicProfile p = profile_series(channel);
        trend += p.trend_strength;
        season += p.seasonality_strength;
        shift += p.shifting;
        trans += p.transition;
        adf += p.adf_pvalue;
        stationary_votes += p.stationary ? 1 : 0;
    }
    const double n = static_cast<double>(dataset.channel_count());
    aggregate.trend_strength = trend / n;
    aggregate.seasonality_strength = season / n;
    aggregate.shifting = shift / n;
    aggregate.transition = trans / n;
    aggregate.adf_pvalue = adf / n;
    aggregate.stationary = 2 * stationary_votes >= dataset.channel_count();
    if (dataset.channel_count() >= 2) {
        aggregate.correlation = correlation_score(dataset);
    }
    return aggregate;
}

} // namespace tsbench
