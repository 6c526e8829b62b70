#pragma once

#include "tsbench/core/error.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace tsbench {

double mean_of(std::span<const double> values);
/// Population (divide-by-n) variance.
double population_variance(std::span<const double> values);
double population_covariance(std::span<const double> a, std::span<const double> b);
/// Pearson correlation; DegenerateVariance when either side is constant.
double pearson_correlation(std::span<const double> a, std::span<const double> b);
/// Median of an unsorted range (average of middle two for even counts).
double median_of(std::vector<double> values);

/// Autocorrelations for lags 0..max_lag, demeaned and normalized so that
/// result[0] == 1. Errors: TooShort, DegenerateVariance for constant input.
std::vector<double> acf(std::span<const double> values, std::size_t max_lag);

/// Smallest lag tau >= 1 with acf[tau] <= 0. If no crossing occurs up to
/// min(T-1, T/2), returns that cap.
std::size_t first_zero_acf(std::span<const double> values);

struct AdfResult {
    double statistic = 0.0;
    double pvalue = 1.0;
    int lags = 0;
    int nobs = 0;
};

/// Augmented Dickey-Fuller unit-root test with a constant term.
/// Lag order follows the Schwert rule floor(12*(T/100)^0.25); the p-value is
/// the MacKinnon response-surface approximation for the constant-only case.
/// Errors: TooShort (T < 20), DegenerateVariance.
AdfResult adf_test(std::span<const double> values);

double adf_pvalue(std::span<const double> values);

/// True iff adf_pvalue(values) <= 0.05 (inclusive).
bool stationarity(std::span<const double> values);

} // namespace tsbench
