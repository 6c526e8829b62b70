#pragma once

#include "tsbench/core/series.hpp"
#include "tsbench/forecast/forecaster.hpp"
#include "tsbench/metrics/metrics.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsbench {

enum class Strategy { Fixed, Rolling };

Strategy parse_strategy(const std::string& token);
const char* strategy_name(Strategy strategy);

enum class Normalization { Zscore, None };

/// Per-channel centering/scaling fitted on the training range only.
/// Constant channels fall back to scale 1 so apply stays invertible.
class Normalizer {
public:
    static Normalizer fit(const Dataset& dataset, std::size_t train_begin,
                          std::size_t train_end);
    static Normalizer identity(std::size_t channels);

    Frame apply(const Frame& frame) const;
    Frame invert(const Frame& frame) const;
    double apply_one(double value, std::size_t channel) const;
    double invert_one(double value, std::size_t channel) const;

    std::size_t channels() const { return means_.size(); }

private:
    std::vector<double> means_;
    std::vector<double> stds_;
};

/// Rolling window origins relative to the test start: k*stride for
/// k = 0, 1, ..., plus the final aligned origin (test_length - horizon) when
/// the stride does not land on it. With stride 1 the count is L - F + 1;
/// no window is ever dropped regardless of execution batching.
/// Errors: HorizonTooLong when test_length < horizon.
std::vector<std::size_t> enumerate_rolling_windows(std::size_t test_length,
                                                   std::size_t horizon,
                                                   std::size_t stride);

/// One (dataset x method x horizon) evaluation request.
struct EvaluationPlan {
    const Dataset* dataset = nullptr;
    MethodSpec method;
    Strategy strategy = Strategy::Rolling;
    std::size_t horizon = 0;
    std::size_t lookback = 0; // 0 = auto: round(1.25 * horizon)
    std::size_t stride = 1;
    std::vector<MetricKind> metrics;
    Normalization normalization = Normalization::Zscore;
    bool raw_scale_metrics = false; // score on the original scale instead
    std::size_t batch_size = 32;    // execution detail; never changes results

    void validate() const; // InvalidPlan / HorizonTooLong / InvalidSplit
    std::size_t effective_lookback() const;
};

struct MetricOutcome {
    MetricKind kind = MetricKind::Mae;
    bool failed = false;
    double value = 0.0;
    std::string failure_reason;
};

/// Result of one evaluation cell. Window accounting is explicit: scored +
/// failed always equals the enumeration count.
struct CellResult {
    std::size_t windows_total = 0;
    std::size_t windows_scored = 0;
    std::size_t windows_failed = 0;
    std::string first_failure;
    std::vector<MetricOutcome> metrics;
};

/// Fixed strategy: fit on the first T - F points, forecast the last F.
CellResult run_fixed(const EvaluationPlan& plan);

/// Rolling strategy: score every enumerated window, average per metric.
/// Per-window failures are recorded and excluded, never silently dropped.
CellResult run_rolling(const EvaluationPlan& plan);

CellResult run_plan(const EvaluationPlan& plan);

} // namespace tsbench
