#pragma once

#include "tsbench/core/error.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsbench {

enum class MetricKind { Mae, Mape, Mse, Smape, Rmse, Wape, Msmape, Mase };

inline constexpr MetricKind kAllMetrics[] = {
    MetricKind::Mae,  MetricKind::Mape, MetricKind::Mse,    MetricKind::Smape,
    MetricKind::Rmse, MetricKind::Wape, MetricKind::Msmape, MetricKind::Mase,
};

/// Lower-case token used in configs and reports: mae, mape, mse, smape,
/// rmse, wape, msmape, mase.
MetricKind parse_metric_name(const std::string& token);
const char* metric_name(MetricKind kind);

/// Inputs for one metric evaluation. Forecasts/actuals are flattened
/// (horizon x channel) error sets for multivariate output. The train series
/// and seasonal period only matter for MASE, which is computed per channel
/// against the seasonal-naive in-sample error and averaged.
struct MetricContext {
    std::vector<double> forecasts;
    std::vector<double> actuals;
    std::vector<std::vector<double>> train_channels; // raw scale, MASE only
    int seasonal_period = 1;
    double msmape_epsilon = 0.1;
    std::size_t channel_count = 1; // layout of the flattened vectors
};

/// Exact formula evaluation. MAPE/SMAPE/MSMAPE are expressed in percent.
/// Errors: LengthMismatch, DivisionByZero (naming the metric),
/// MissingTrainSeries.
double compute_metric(MetricKind kind, const MetricContext& context);

/// Arithmetic mean of per-window metric values. Errors: EmptyList, NonFinite.
double average_over_windows(std::span<const double> values);

} // namespace tsbench
