#include "tsbench/characterize/features.hpp"

#include "tsbench/characterize/characteristics.hpp"
#include "tsbench/characterize/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace tsbench {

const std::array<std::string, kFeatureCount>& feature_names() {
    static const std::array<std::string, kFeatureCount> names = {
        "mean",
        "variance",
        "acf_lag1",
        "acf_lag2",
        "acf_first_zero",
        "transition_variance",
        "skewness",
        "excess_kurtosis",
        "median",
        "interquartile_range",
        "minimum",
        "maximum",
        "longest_above_mean",
        "longest_below_mean",
        "mean_abs_change",
        "positive_change_ratio",
        "mean_crossing_rate",
        "acf_sum_10",
        "change_asymmetry",
        "segment_mean_spread",
        "segment_std_spread",
        "large_change_ratio",
    };
    return names;
}

namespace {

double quantile_sorted(const std::vector<double>& sorted, double p) {
    const double h = p * static_cast<double>(sorted.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

double longest_run(std::span<const double> values, double mean, bool above) {
    std::size_t best = 0, run = 0;
    for (double v : values) {
        const bool hit = above ? (v > mean) : (v < mean);
        run = hit ? run + 1 : 0;
        best = std::max(best, run);
    }
    return static_cast<double>(best) / static_cast<double>(values.size());
}

} // namespace

FeatureVector feature_vector(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 20) {
        throw Error(ErrorCode::TooShort, "feature_vector needs T >= 20");
    }
    FeatureVector fv;

    const double m = mean_of(values);
    const double var = population_variance(values);
    if (var <= 0.0) {
        return fv; // constant input: all-zero sentinel
    }
    const double sd = std::sqrt(var);

    const std::vector<double> r = acf(values, 10);

    fv.features[0] = m;
    fv.features[1] = var;
    fv.features[2] = r[1];
    fv.features[3] = r[2];
    fv.features[4] = static_cast<double>(first_zero_acf(values));
    try {
        fv.features[5] = transition_value(values);
    } catch (const Error& e) {
        if (e.code() != ErrorCode::TooShortAfterDownsample) throw;
        fv.features[5] = 0.0;
    }

    double m3 = 0.0, m4 = 0.0;
    for (double v : values) {
        const double d = v - m;
        m3 += d * d * d;
        m4 += d * d * d * d;
    }
    m3 /= static_cast<double>(n);
    m4 /= static_cast<double>(n);
    fv.features[6] = m3 / (sd * sd * sd);
    fv.features[7] = m4 / (var * var) - 3.0;

    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    fv.features[8] = quantile_sorted(sorted, 0.5);
    fv.features[9] = quantile_sorted(sorted, 0.75) - quantile_sorted(sorted, 0.25);
    fv.features[10] = sorted.front();
    fv.features[11] = sorted.back();

    fv.features[12] = longest_run(values, m, true);
    fv.features[13] = longest_run(values, m, false);

    double abs_change = 0.0, d2 = 0.0, d3 = 0.0;
    std::size_t positive = 0, crossings = 0, large = 0;
    for (std::size_t t = 0; t + 1 < n; ++t) {
        const double d = values[t + 1] - values[t];
        abs_change += std::fabs(d);
        d2 += d * d;
        d3 += d * d * d;
        if (d > 0.0) ++positive;
        if (std::fabs(d) > sd) ++large;
        if ((values[t] - m) * (values[t + 1] - m) < 0.0) ++crossings;
    }
    const double steps = static_cast<double>(n - 1);
    fv.features[14] = abs_change / steps;
    fv.features[15] = static_cast<double>(positive) / steps;
    fv.features[16] = static_cast<double>(crossings) / steps;
    fv.features[17] = std::accumulate(r.begin() + 1, r.end(), 0.0);
    d2 /= steps;
    d3 /= steps;
    fv.features[18] = d2 > 0.0 ? d3 / std::pow(d2, 1.5) : 0.0;

    // dispersion of per-segment statistics, 5 equal segments
    const std::size_t seg_len = n / 5;
    std::vector<double> seg_means, seg_stds;
    for (std::size_t s = 0; s < 5; ++s) {
        const std::size_t begin = s * seg_len;
        const std::size_t end = (s == 4) ? n : begin + seg_len;
        auto seg = values.subspan(begin, end - begin);
        seg_means.push_back(mean_of(seg));
        seg_stds.push_back(std::sqrt(population_variance(seg)));
    }
    fv.features[19] = std::sqrt(population_variance(seg_means)) / sd;
    fv.features[20] = std::sqrt(population_variance(seg_stds)) / sd;
    fv.features[21] = static_cast<double>(large) / steps;

    for (double& f : fv.features) {
        if (!std::isfinite(f)) f = 0.0;
    }
    return fv;
}

} // namespace tsbench
