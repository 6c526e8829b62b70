#pragma once

#include "tsbench/forecast/forecaster.hpp"

#include <atomic>
#include <cstdint>
#include <string>

namespace tsbench {

/// Bridges any third-party method through the filesystem. Per forecast the
/// harness writes a request CSV of the history window (header: channel
/// names; rows: time-ordered values) and a key-value sidecar at
/// "<request>.meta" carrying horizon, lookback and seed, then invokes
///
///     <command> <request.csv> <response.csv>
///
/// and reads the response CSV of horizon rows x N columns (an optional
/// header row is skipped). A nonzero exit status is reported as a method
/// failure for the evaluation cell.
class ExternalForecaster final : public Forecaster {
public:
    ExternalForecaster(std::string command, std::uint64_t seed);

    void fit(const Frame& train, const FitContext& context) override;
    Frame forecast(const Frame& history, std::size_t horizon) const override;
    const char* name() const override { return "external"; }
    bool default_retrain_each_window() const override { return false; }

private:
    std::string command_;
    std::uint64_t seed_ = 0;
    std::size_t lookback_ = 0;
    mutable std::atomic<std::uint64_t> invocation_{0};
};

} // namespace tsbench
