#pragma once

#include <stdexcept>
#include <string>

namespace tsbench {

enum class ErrorCode {
    // series validation
    NonFinite,
    EmptySeries,
    NonMonotoneTimestamps,
    LengthMismatch,
    TooShort,
    // characterization
    DegenerateVariance,
    DegenerateMedians,
    TooShortAfterDownsample,
    Univariate,
    DegenerateFeatures,
    EmptyCollection,
    // metrics
    DivisionByZero,
    MissingTrainSeries,
    EmptyList,
    // forecasting
    InsufficientData,
    SingularSystem,
    ShapeMismatch,
    NonFiniteOutput,
    MethodFailure,
    // evaluation
    HorizonTooLong,
    EmptyTrainRange,
    InvalidPlan,
    // ingestion / config
    ParseError,
    MissingValues,
    RaggedRows,
    SchemaError,
    UnknownMethod,
    InvalidSplit,
    // reporting
    EmptyRecords,
    InsufficientPlotData,
    IoError,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a machine-checkable code alongside the message.
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
          code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

} // namespace tsbench
