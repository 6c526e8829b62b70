#pragma once

#include "tsbench/forecast/forecaster.hpp"

#include <vector>

namespace tsbench {

/// Repeats the last observed value.
class NaiveForecaster final : public Forecaster {
public:
    void fit(const Frame& train, const FitContext& context) override;
    Frame forecast(const Frame& history, std::size_t horizon) const override;
    const char* name() const override { return "naive"; }
};

/// Repeats the trailing seasonal cycle.
class SeasonalNaiveForecaster final : public Forecaster {
public:
    void fit(const Frame& train, const FitContext& context) override;
    Frame forecast(const Frame& history, std::size_t horizon) const override;
    const char* name() const override { return "seasonal_naive"; }

private:
    std::size_t period_ = 1;
};

/// Per-channel autoregressive least squares on `lookback` lagged values.
/// DMS fits one head per horizon step; IMS fits a one-step head and feeds
/// predictions back.
class LinearRegressionForecaster final : public Forecaster {
public:
    explicit LinearRegressionForecaster(PredictionMode mode) { mode_ = mode; }
    void fit(const Frame& train, const FitContext& context) override;
    Frame forecast(const Frame& history, std::size_t horizon) const override;
    const char* name() const override { return "linear_regression"; }
    bool default_retrain_each_window() const override { return false; }

private:
    std::size_t lookback_ = 0;
    std::size_t fitted_horizon_ = 0;
    // heads[step][channel] = lookback weights + intercept
    std::vector<std::vector<std::vector<double>>> heads_;
};

/// Vector autoregression of order p, least squares with a ridge fallback on
/// rank deficiency. Forecasts iterate the fitted system.
class VarForecaster final : public Forecaster {
public:
    explicit VarForecaster(int order) : order_(order) {}
    void fit(const Frame& train, const FitContext& context) override;
    Frame forecast(const Frame& history, std::size_t horizon) const override;
    const char* name() const override { return "var"; }

    int order() const { return order_; }
    /// coefficient(i, target, source) = weight of source channel at lag i+1
    double coefficient(int lag, std::size_t target, std::size_t source) const;
    double intercept(std::size_t target) const;

private:
    int order_ = 1;
    // row-major (1 + N*p) x N solution matrix, intercept first
    std::vector<double> beta_;
};

/// Additive Holt-Winters exponential smoothing, one model per channel.
/// Smoothing weights are grid searched over {0.1..0.9} against one-step
/// in-sample squared error. Forecasting refilters the fitted weights over the
/// supplied history before extrapolating.
class EtsForecaster final : public Forecaster {
public:
    void fit(const Frame& train, const FitContext& context) override;
    Frame forecast(const Frame& history, std::size_t horizon) const override;
    const char* name() const override { return "ets"; }

    struct Weights {
        double alpha = 0.1;
        double beta = 0.1;
        double gamma = 0.1;
    };
    Weights channel_weights(std::size_t channel) const { return weights_[channel]; }

private:
    int period_ = 1;
    std::vector<Weights> weights_;
};

} // namespace tsbench
