#pragma once

#include "tsbench/core/series.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace tsbench {

enum class PredictionMode { Dms, Ims };

PredictionMode parse_prediction_mode(const std::string& token);
const char* prediction_mode_name(PredictionMode mode);

/// A resolved method request. Hyperparameters are kept as strings and parsed
/// by the method; unknown names or keys are rejected up front.
struct MethodSpec {
    std::string name;
    std::map<std::string, std::string> hyperparameters;
    PredictionMode prediction_mode = PredictionMode::Dms;
    std::uint64_t deterministic_seed = 0;
    std::optional<bool> retrain_each_window; // empty = method default
};

struct FitContext {
    int seasonal_period = 1;
    std::size_t horizon = 1;  // needed by direct multi-step heads
    std::size_t lookback = 0; // 0 = method default
    std::uint64_t seed = 0;
};

/// A forecasting method. `fit` learns parameters from a training slice;
/// `forecast` conditions only on the supplied history window, so a fitted
/// model can be reused across rolling windows without leaking future data.
/// Instances are immutable after fit.
class Forecaster {
public:
    virtual ~Forecaster() = default;

    virtual void fit(const Frame& train, const FitContext& context) = 0;
    virtual Frame forecast(const Frame& history, std::size_t horizon) const = 0;

    virtual const char* name() const = 0;
    /// Statistical methods refit per rolling window by default.
    virtual bool default_retrain_each_window() const { return true; }

    std::uint64_t training_fingerprint() const { return training_fingerprint_; }
    std::size_t fitted_channels() const { return fitted_channels_; }

protected:
    void record_training_slice(const Frame& train);
    void check_history(const Frame& history, std::size_t horizon) const;
    static void check_output(const Frame& forecast);

    PredictionMode mode_ = PredictionMode::Dms;
    std::uint64_t training_fingerprint_ = 0;
    std::size_t fitted_channels_ = 0;
};

/// Registry. Known methods: naive, seasonal_naive, linear_regression, var,
/// ets, external. Errors: UnknownMethod, SchemaError for unknown
/// hyperparameter keys or malformed values.
std::unique_ptr<Forecaster> make_forecaster(const MethodSpec& spec);
const std::vector<std::string>& known_methods();
void validate_method_spec(const MethodSpec& spec);

} // namespace tsbench
