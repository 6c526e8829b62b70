#include "tsbench/core/series.hpp"

#include <algorithm>
#include <cmath>

namespace tsbench {

const char* error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::NonFinite: return "NonFinite";
        case ErrorCode::EmptySeries: return "EmptySeries";
        case ErrorCode::NonMonotoneTimestamps: return "NonMonotoneTimestamps";
        case ErrorCode::LengthMismatch: return "LengthMismatch";
        case ErrorCode::TooShort: return "TooShort";
        case ErrorCode::DegenerateVariance: return "DegenerateVariance";
        case ErrorCode::DegenerateMedians: return "DegenerateMedians";
        case ErrorCode::TooShortAfterDownsample: return "TooShortAfterDownsample";
        case ErrorCode::Univariate: return "Univariate";
        case ErrorCode::DegenerateFeatures: return "DegenerateFeatures";
        case ErrorCode::EmptyCollection: return "EmptyCollection";
        case ErrorCode::DivisionByZero: return "DivisionByZero";
        case ErrorCode::MissingTrainSeries: return "MissingTrainSeries";
        case ErrorCode::EmptyList: return "EmptyList";
        case ErrorCode::InsufficientData: return "InsufficientData";
        case ErrorCode::SingularSystem: return "SingularSystem";
        case ErrorCode::ShapeMismatch: return "ShapeMismatch";
        case ErrorCode::NonFiniteOutput: return "NonFiniteOutput";
        case ErrorCode::MethodFailure: return "MethodFailure";
        case ErrorCode::HorizonTooLong: return "HorizonTooLong";
        case ErrorCode::EmptyTrainRange: return "EmptyTrainRange";
        case ErrorCode::InvalidPlan: return "InvalidPlan";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::MissingValues: return "MissingValues";
        case ErrorCode::RaggedRows: return "RaggedRows";
        case ErrorCode::SchemaError: return "SchemaError";
        case ErrorCode::UnknownMethod: return "UnknownMethod";
        case ErrorCode::InvalidSplit: return "InvalidSplit";
        case ErrorCode::EmptyRecords: return "EmptyRecords";
        case ErrorCode::InsufficientPlotData: return "InsufficientPlotData";
        case ErrorCode::IoError: return "IoError";
    }
    return "Unknown";
}

FrequencyLabel parse_frequency_label(const std::string& token) {
    if (token == "yearly") return FrequencyLabel::Yearly;
    if (token == "quarterly") return FrequencyLabel::Quarterly;
    if (token == "monthly") return FrequencyLabel::Monthly;
    if (token == "weekly") return FrequencyLabel::Weekly;
    if (token == "daily") return FrequencyLabel::Daily;
    if (token == "hourly") return FrequencyLabel::Hourly;
    if (token == "other") return FrequencyLabel::Other;
    throw Error(ErrorCode::SchemaError, "unknown frequency label '" + token + "'");
}

const char* frequency_label_name(FrequencyLabel label) {
    switch (label) {
        case FrequencyLabel::Yearly: return "yearly";
        case FrequencyLabel::Quarterly: return "quarterly";
        case FrequencyLabel::Monthly: return "monthly";
        case FrequencyLabel::Weekly: return "weekly";
        case FrequencyLabel::Daily: return "daily";
        case FrequencyLabel::Hourly: return "hourly";
        case FrequencyLabel::Other: return "other";
    }
    return "other";
}

int default_seasonal_period(FrequencyLabel label) {
    switch (label) {
        case FrequencyLabel::Yearly: return 1;
        case FrequencyLabel::Quarterly: return 4;
        case FrequencyLabel::Monthly: return 12;
        case FrequencyLabel::Weekly: return 52;
        case FrequencyLabel::Daily: return 7;
        case FrequencyLabel::Hourly: return 24;
        case FrequencyLabel::Other: return 1;
    }
    return 1;
}

TimeSeries validate_series(std::vector<double> values,
                           std::vector<std::int64_t> timestamps,
                           int seasonal_period,
                           FrequencyLabel frequency_label) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptySeries, "series has no values");
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (!std::isfinite(values[i])) {
            throw Error(ErrorCode::NonFinite,
                        "non-finite value at index " + std::to_string(i));
        }
    }
    if (!timestamps.empty()) {
        if (timestamps.size() != values.size()) {
            throw Error(ErrorCode::LengthMismatch,
                        "timestamps length " + std::to_string(timestamps.size()) +
                            " != values length " + std::to_string(values.size()));
        }
        for (std::size_t i = 1; i < timestamps.size(); ++i) {
            if (timestamps[i] <= timestamps[i - 1]) {
                throw Error(ErrorCode::NonMonotoneTimestamps,
                            "timestamp at index " + std::to_string(i) +
                                " does not increase");
            }
        }
    }
    if (seasonal_period < 1) {
        throw Error(ErrorCode::TooShort, "seasonal_period must be >= 1");
    }
    TimeSeries series;
    series.values = std::move(values);
    series.timestamps = std::move(timestamps);
    series.seasonal_period = seasonal_period;
    series.frequency_label = frequency_label;
    return series;
}

void SplitSpec::validate() const {
    const double fractions[3] = {train_fraction, val_fraction, test_fraction};
    for (double f : fractions) {
        if (!(f > 0.0 && f < 1.0)) {
            throw Error(ErrorCode::InvalidSplit, "split fractions must lie in (0,1)");
        }
    }
    double sum = train_fraction + val_fraction + test_fraction;
    if (std::fabs(sum - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidSplit, "split fractions must sum to 1");
    }
}

SplitRanges split_chronological(std::size_t length, const SplitSpec& spec) {
    spec.validate();
    if (length < 3) {
        throw Error(ErrorCode::TooShort, "need at least 3 points to split");
    }
    // Cumulative floors; the epsilon absorbs representation error in products
    // of small rationals so exact boundaries (0.7*10 = 7) land on the integer.
    auto boundary = [length](double fraction) {
        return static_cast<std::size_t>(
            std::floor(fraction * static_cast<double>(length) + 1e-9));
    };
    SplitRanges ranges;
    ranges.train_begin = 0;
    ranges.train_end = boundary(spec.train_fraction);
    ranges.val_begin = ranges.train_end;
    ranges.val_end = boundary(spec.train_fraction + spec.val_fraction);
    ranges.test_begin = ranges.val_end;
    ranges.test_end = length;
    if (ranges.train_end == 0 || ranges.val_end <= ranges.val_begin ||
        ranges.test_end <= ranges.test_begin) {
        throw Error(ErrorCode::TooShort, "a split range would be empty at length " +
                                             std::to_string(length));
    }
    return ranges;
}

void Dataset::validate() const {
    if (channels.empty()) {
        throw Error(ErrorCode::EmptySeries, "dataset '" + name + "' has no channels");
    }
    const std::size_t expected = channels.front().length();
    for (std::size_t c = 1; c < channels.size(); ++c) {
        if (channels[c].length() != expected) {
            throw Error(ErrorCode::LengthMismatch,
                        "channel " + std::to_string(c) + " length differs in dataset '" +
                            name + "'");
        }
        if (channels[c].timestamps != channels.front().timestamps) {
            throw Error(ErrorCode::LengthMismatch,
                        "channel " + std::to_string(c) + " timestamps differ in dataset '" +
                            name + "'");
        }
    }
    if (!channel_names.empty() && channel_names.size() != channels.size()) {
        throw Error(ErrorCode::LengthMismatch,
                    "channel name count differs from channel count in dataset '" + name +
                        "'");
    }
    split.validate();
}

std::vector<double> Frame::column(std::size_t c) const {
    std::vector<double> out(rows);
    for (std::size_t r = 0; r < rows; ++r) out[r] = at(r, c);
    return out;
}

Frame Frame::tail(std::size_t n) const {
    if (n >= rows) return *this;
    Frame out(n, cols);
    std::copy(data.begin() + static_cast<std::ptrdiff_t>((rows - n) * cols), data.end(),
              out.data.begin());
    return out;
}

bool Frame::all_finite() const {
    return std::all_of(data.begin(), data.end(),
                       [](double v) { return std::isfinite(v); });
}

Frame dataset_frame(const Dataset& dataset, std::size_t begin, std::size_t end) {
    if (begin > end || end > dataset.length()) {
        throw Error(ErrorCode::ShapeMismatch, "frame range out of bounds");
    }
    Frame frame(end - begin, dataset.channel_count());
    for (std::size_t c = 0; c < dataset.channel_count(); ++c) {
        const auto& values = dataset.channels[c].values;
        for (std::size_t r = begin; r < end; ++r) {
            frame.at(r - begin, c) = values[r];
        }
    }
    return frame;
}

} // namespace tsbench
