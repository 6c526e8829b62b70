#pragma once

#include "tsbench/core/error.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tsbench {

enum class FrequencyLabel {
    Yearly,
    Quarterly,
    Monthly,
    Weekly,
    Daily,
    Hourly,
    Other,
};

FrequencyLabel parse_frequency_label(const std::string& token);
const char* frequency_label_name(FrequencyLabel label);

/// Conventional points-per-cycle for a sampling frequency. The weekly value
/// (52) is capped below the series length by the caller when needed.
int default_seasonal_period(FrequencyLabel label);

/// One channel of ordered real values. Timestamps are optional integer
/// ordinals (index, day or second counts); all algorithms run on index order.
struct TimeSeries {
    std::vector<double> values;
    std::vector<std::int64_t> timestamps; // empty = absent
    int seasonal_period = 1;
    FrequencyLabel frequency_label = FrequencyLabel::Other;

    std::size_t length() const { return values.size(); }
};

/// Validates raw inputs and assembles a TimeSeries.
/// Errors: NonFinite, EmptySeries, NonMonotoneTimestamps, LengthMismatch.
TimeSeries validate_series(std::vector<double> values,
                           std::vector<std::int64_t> timestamps = {},
                           int seasonal_period = 1,
                           FrequencyLabel frequency_label = FrequencyLabel::Other);

/// Chronological train/validation/test fractions. Each in (0,1), summing to 1.
struct SplitSpec {
    double train_fraction = 0.7;
    double val_fraction = 0.1;
    double test_fraction = 0.2;

    void validate() const; // InvalidSplit on violation
};

struct SplitRanges {
    // half-open index ranges [begin, end)
    std::size_t train_begin = 0, train_end = 0;
    std::size_t val_begin = 0, val_end = 0;
    std::size_t test_begin = 0, test_end = 0;
};

/// Cumulative floor rule: train gets floor(f_train*T) points, train+val gets
/// floor((f_train+f_val)*T), the remainder goes to test.
/// Errors: TooShort when any range would be empty.
SplitRanges split_chronological(std::size_t length, const SplitSpec& spec);

/// An N-channel series with equal-length channels and a shared split.
struct Dataset {
    std::string name;
    std::vector<TimeSeries> channels;
    std::vector<std::string> channel_names; // empty = anonymous (ch0, ch1, ...)
    std::string domain_tag;
    SplitSpec split;
    std::vector<std::string> date_labels; // raw date column, kept for round-trips

    std::size_t length() const { return channels.empty() ? 0 : channels.front().length(); }
    std::size_t channel_count() const { return channels.size(); }

    void validate() const; // channel count, equal lengths, shared timestamps
};

/// One forecast evaluation window: history is [0, history_end), the target is
/// [history_end, history_end + horizon).
struct ForecastWindow {
    std::size_t history_end = 0;
    std::size_t horizon = 0;
    std::size_t lookback = 0;
};

/// Dense row-major (time x channel) block of values, the working currency of
/// forecasters and the evaluation engine.
struct Frame {
    std::size_t rows = 0;
    std::size_t cols = 0;
    std::vector<double> data; // row-major

    Frame() = default;
    Frame(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

    double& at(std::size_t r, std::size_t c) { return data[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return data[r * cols + c]; }

    std::vector<double> column(std::size_t c) const;
    Frame tail(std::size_t n) const; // last n rows (all if n >= rows)
    bool all_finite() const;
};

/// Copies dataset values over the index range [begin, end) into a Frame.
Frame dataset_frame(const Dataset& dataset, std::size_t begin, std::size_t end);

} // namespace tsbench
