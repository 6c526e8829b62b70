#include "tsbench/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace tsbench {

MetricKind parse_metric_name(const std::string& token) {
    if (token == "mae") return MetricKind::Mae;
    if (token == "mape") return MetricKind::Mape;
    if (token == "mse") return MetricKind::Mse;
    if (token == "smape") return MetricKind::Smape;
    if (token == "rmse") return MetricKind::Rmse;
    if (token == "wape") return MetricKind::Wape;
    if (token == "msmape") return MetricKind::Msmape;
    if (token == "mase") return MetricKind::Mase;
    throw Error(ErrorCode::SchemaError, "unknown metric '" + token + "'");
}

const char* metric_name(MetricKind kind) {
    switch (kind) {
        case MetricKind::Mae: return "mae";
        case MetricKind::Mape: return "mape";
        case MetricKind::Mse: return "mse";
        case MetricKind::Smape: return "smape";
        case MetricKind::Rmse: return "rmse";
        case MetricKind::Wape: return "wape";
        case MetricKind::Msmape: return "msmape";
        case MetricKind::Mase: return "mase";
    }
    return "?";
}

namespace {

void check_pair(const MetricContext& ctx) {
    if (ctx.forecasts.size() != ctx.actuals.size()) {
        throw Error(ErrorCode::LengthMismatch, "forecast/actual lengths differ");
    }
    if (ctx.forecasts.empty()) {
        throw Error(ErrorCode::LengthMismatch, "empty forecast");
    }
    for (double v : ctx.forecasts) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite forecast");
    }
    for (double v : ctx.actuals) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite actual");
    }
}

double mase_single_channel(std::span<const double> forecasts,
                           std::span<const double> actuals,
                           std::span<const double> train, int seasonal_period) {
    const std::size_t train_len = train.size();
    const std::size_t season = static_cast<std::size_t>(seasonal_period);
    if (train_len <= season) {
        throw Error(ErrorCode::MissingTrainSeries,
                    "mase needs train length M > seasonal period S");
    }
    double naive_error = 0.0;
    for (std::size_t k = season; k < train_len; ++k) {
        naive_error += std::fabs(train[k] - train[k - season]);
    }
    const double h = static_cast<double>(forecasts.size());
    const double denominator =
        h / static_cast<double>(train_len - season) * naive_error;
    if (denominator == 0.0) {
        throw Error(ErrorCode::DivisionByZero, "mase seasonal-naive error is zero");
    }
    double numerator = 0.0;
    for (std::size_t k = 0; k < forecasts.size(); ++k) {
        numerator += std::fabs(forecasts[k] - actuals[k]);
    }
    return numerator / denominator;
}

double mase(const MetricContext& ctx) {
    if (ctx.seasonal_period < 1) {
        throw Error(ErrorCode::DivisionByZero, "mase needs seasonal period S >= 1");
    }
    const std::size_t channels = std::max<std::size_t>(ctx.channel_count, 1);
    if (ctx.train_channels.size() != channels) {
        throw Error(ErrorCode::MissingTrainSeries,
                    "mase needs one train series per channel");
    }
    if (ctx.forecasts.size() % channels != 0) {
        throw Error(ErrorCode::LengthMismatch, "flattened length not divisible by N");
    }
    const std::size_t horizon = ctx.forecasts.size() / channels;
    // flattened layout is row-major (time x channel)
    double sum = 0.0;
    std::vector<double> f(horizon), y(horizon);
    for (std::size_t c = 0; c < channels; ++c) {
        for (std::size_t k = 0; k < horizon; ++k) {
            f[k] = ctx.forecasts[k * channels + c];
            y[k] = ctx.actuals[k * channels + c];
        }
        sum += mase_single_channel(f, y, ctx.train_channels[c], ctx.seasonal_period);
    }
    return sum / static_cast<double>(channels);
}

} // namespace

double compute_metric(MetricKind kind, const MetricContext& ctx) {
    check_pair(ctx);
    const auto& f = ctx.forecasts;
    const auto& y = ctx.actuals;
    const double h = static_cast<double>(f.size());

    switch (kind) {
        case MetricKind::Mae: {
            double sum = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) sum += std::fabs(f[k] - y[k]);
            return sum / h;
        }
        case MetricKind::Mse: {
            double sum = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) {
                sum += (f[k] - y[k]) * (f[k] - y[k]);
            }
            return sum / h;
        }
        case MetricKind::Rmse:
            return std::sqrt(compute_metric(MetricKind::Mse, ctx));
        case MetricKind::Mape: {
            double sum = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) {
                if (y[k] == 0.0) {
                    throw Error(ErrorCode::DivisionByZero, "mape with zero actual");
                }
                sum += std::fabs(y[k] - f[k]) / std::fabs(y[k]);
            }
            return 100.0 * sum / h;
        }
        case MetricKind::Smape: {
            double sum = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) {
                const double denom = (std::fabs(y[k]) + std::fabs(f[k])) / 2.0;
                if (denom == 0.0) {
                    throw Error(ErrorCode::DivisionByZero,
                                "smape with zero forecast and actual");
                }
                sum += std::fabs(f[k] - y[k]) / denom;
            }
            return 100.0 * sum / h;
        }
        case MetricKind::Wape: {
            double num = 0.0, denom = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) {
                num += std::fabs(y[k] - f[k]);
                denom += std::fabs(y[k]);
            }
            if (denom == 0.0) {
                throw Error(ErrorCode::DivisionByZero, "wape with all-zero actuals");
            }
            return num / denom;
        }
        case MetricKind::Msmape: {
            double sum = 0.0;
            for (std::size_t k = 0; k < f.size(); ++k) {
                const double denom =
                    std::max(std::fabs(y[k]) + std::fabs(f[k]) + ctx.msmape_epsilon,
                             0.5 + ctx.msmape_epsilon) /
                    2.0;
                sum += std::fabs(f[k] - y[k]) / denom;
            }
            return 100.0 * sum / h;
        }
        case MetricKind::Mase:
            return mase(ctx);
    }
    throw Error(ErrorCode::SchemaError, "unhandled metric kind");
}

double average_over_windows(std::span<const double> values) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptyList, "average of empty window list");
    }
    double sum = 0.0;
    for (double v : values) {
        if (!std::isfinite(v)) {
            throw Error(ErrorCode::NonFinite, "non-finite window metric");
        }
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

} // namespace tsbench
