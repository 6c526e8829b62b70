#include "tsbench/eval/evaluation.hpp"

#include <algorithm>
#include <cmath>

namespace tsbench {

Strategy parse_strategy(const std::string& token) {
    if (token == "fixed") return Strategy::Fixed;
    if (token == "rolling") return Strategy::Rolling;
    throw Error(ErrorCode::SchemaError, "unknown strategy '" + token + "'");
}

const char* strategy_name(Strategy strategy) {
    return strategy == Strategy::Fixed ? "fixed" : "rolling";
}

// ------------------------------------------------------------ normalizer ----

Normalizer Normalizer::fit(const Dataset& dataset, std::size_t train_begin,
                           std::size_t train_end) {
    if (train_begin >= train_end || train_end > dataset.length()) {
        throw Error(ErrorCode::EmptyTrainRange, "empty normalizer train range");
    }
    Normalizer norm;
    const std::size_t count = train_end - train_begin;
    for (const auto& channel : dataset.channels) {
        double sum = 0.0;
        for (std::size_t t = train_begin; t < train_end; ++t) sum += channel.values[t];
        const double mean = sum / static_cast<double>(count);
        double var = 0.0;
        for (std::size_t t = train_begin; t < train_end; ++t) {
            const double d = channel.values[t] - mean;
            var += d * d;
        }
        var /= static_cast<double>(count);
        norm.means_.push_back(mean);
        norm.stds_.push_back(var > 0.0 ? std::sqrt(var) : 1.0);
    }
    return norm;
}

Normalizer Normalizer::identity(std::size_t channels) {
    Normalizer norm;
    norm.means_.assign(channels, 0.0);
    norm.stds_.assign(channels, 1.0);
    return norm;
}

Frame Normalizer::apply(const Frame& frame) const {
    if (frame.cols != means_.size()) {
        throw Error(ErrorCode::ShapeMismatch, "normalizer channel mismatch");
    }
    Frame out = frame;
    for (std::size_t r = 0; r < out.rows; ++r) {
        for (std::size_t c = 0; c < out.cols; ++c) {
            out.at(r, c) = (out.at(r, c) - means_[c]) / stds_[c];
        }
    }
    return out;
}

Frame Normalizer::invert(const Frame& frame) const {
    if (frame.cols != means_.size()) {
        throw Error(ErrorCode::ShapeMismatch, "normalizer channel mismatch");
    }
    Frame out = frame;
    for (std::size_t r = 0; r < out.rows; ++r) {
        for (std::size_t c = 0; c < out.cols; ++c) {
            out.at(r, c) = out.at(r, c) * stds_[c] + means_[c];
        }
    }
    return out;
}

double Normalizer::apply_one(double value, std::size_t channel) const {
    return (value - means_[channel]) / stds_[channel];
}

double Normalizer::invert_one(double value, std::size_t channel) const {
    return value * stds_[channel] + means_[channel];
}

// --------------------------------------------------------------- windows ----

std::vector<std::size_t> enumerate_rolling_windows(std::size_t test_length,
                                                   std::size_t horizon,
                                                   std::size_t stride) {
    if (horizon < 1 || stride < 1) {
        throw Error(ErrorCode::InvalidPlan, "horizon and stride must be >= 1");
    }
    if (test_length < horizon) {
        throw Error(ErrorCode::HorizonTooLong,
                    "test length " + std::to_string(test_length) +
                        " is shorter than horizon " + std::to_string(horizon));
    }
    const std::size_t last = test_length - horizon;
    std::vector<std::size_t> offsets;
    for (std::size_t k = 0; k * stride <= last; ++k) offsets.push_back(k * stride);
    if (offsets.back() != last) offsets.push_back(last); // aligned final window
    return offsets;
}

// ------------------------------------------------------------------ plans ----

std::size_t EvaluationPlan::effective_lookback() const {
    if (lookback > 0) return lookback;
    return std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(1.25 * static_cast<double>(horizon))));
}

void EvaluationPlan::validate() const {
    if (dataset == nullptr) {
        throw Error(ErrorCode::InvalidPlan, "plan has no dataset");
    }
    dataset->validate();
    if (horizon < 1) {
        throw Error(ErrorCode::InvalidPlan, "horizon must be >= 1");
    }
    if (stride < 1 || batch_size < 1) {
        throw Error(ErrorCode::InvalidPlan, "stride and batch size must be >= 1");
    }
    if (metrics.empty()) {
        throw Error(ErrorCode::InvalidPlan, "no metrics requested");
    }
    validate_method_spec(method);

    const std::size_t total = dataset->length();
    const std::size_t history = effective_lookback();
    if (strategy == Strategy::Fixed) {
        if (history + horizon > total) {
            throw Error(ErrorCode::InvalidPlan,
                        "fixed strategy needs lookback + horizon <= T for dataset '" +
                            dataset->name + "'");
        }
    } else {
        const SplitRanges ranges = split_chronological(total, dataset->split);
        const std::size_t test_length = ranges.test_end - ranges.test_begin;
        if (test_length < horizon) {
            throw Error(ErrorCode::InvalidSplit,
                        "horizon " + std::to_string(horizon) +
                            " exceeds the test split of dataset '" + dataset->name + "'");
        }
        if (history > ranges.test_begin) {
            throw Error(ErrorCode::InvalidPlan,
                        "lookback " + std::to_string(history) +
                            " reaches before the start of dataset '" + dataset->name +
                            "'");
        }
    }
}

namespace {

struct Scorer {
    const EvaluationPlan& plan;
    const Normalizer& normalizer;
    std::vector<std::vector<double>> raw_train_channels; // MASE denominator
    int seasonal_period = 1;

    std::vector<std::vector<double>> values;  // per metric, per window
    std::vector<MetricOutcome> outcomes;

    Scorer(const EvaluationPlan& p, const Normalizer& n, std::size_t train_end)
        : plan(p), normalizer(n) {
        values.resize(plan.metrics.size());
        outcomes.resize(plan.metrics.size());
        for (std::size_t i = 0; i < plan.metrics.size(); ++i) {
            outcomes[i].kind = plan.metrics[i];
        }
        seasonal_period = plan.dataset->channels.front().seasonal_period;
        for (const auto& channel : plan.dataset->channels) {
            raw_train_channels.emplace_back(channel.values.begin(),
                                            channel.values.begin() +
                                                static_cast<std::ptrdiff_t>(train_end));
        }
    }

    // `forecast` is in model (normalized) space; actuals are raw.
    void score_window(const Frame& forecast, const Frame& raw_actuals) {
        const Frame raw_forecast = normalizer.invert(forecast);
        const Frame norm_actuals = normalizer.apply(raw_actuals);
        for (std::size_t i = 0; i < plan.metrics.size(); ++i) {
            if (outcomes[i].failed) continue;
            const MetricKind kind = plan.metrics[i];
            // MASE compares raw forecasts against the raw train series; the
            // other metrics default to the normalized scale.
            const bool raw_scale = plan.raw_scale_metrics || kind == MetricKind::Mase;
            MetricContext ctx;
            ctx.channel_count = raw_actuals.cols;
            ctx.forecasts = raw_scale ? raw_forecast.data : forecast.data;
            ctx.actuals = raw_scale ? raw_actuals.data : norm_actuals.data;
            ctx.seasonal_period = seasonal_period;
            if (kind == MetricKind::Mase) {
                ctx.train_channels = raw_train_channels;
            }
            try {
                values[i].push_back(compute_metric(kind, ctx));
            } catch (const Error& e) {
                outcomes[i].failed = true;
                outcomes[i].failure_reason = e.what();
            }
        }
    }

    std::vector<MetricOutcome> finish() {
        for (std::size_t i = 0; i < plan.metrics.size(); ++i) {
            if (outcomes[i].failed) continue;
            if (values[i].empty()) {
                outcomes[i].failed = true;
                outcomes[i].failure_reason = "no window produced a value";
                continue;
            }
            outcomes[i].value = average_over_windows(values[i]);
        }
        return outcomes;
    }
};

FitContext make_fit_context(const EvaluationPlan& plan, int seasonal_period) {
    FitContext ctx;
    ctx.seasonal_period = seasonal_period;
    ctx.horizon = plan.horizon;
    ctx.lookback = plan.effective_lookback();
    ctx.seed = plan.method.deterministic_seed;
    return ctx;
}

} // namespace

CellResult run_fixed(const EvaluationPlan& plan) {
    plan.validate();
    const Dataset& dataset = *plan.dataset;
    const std::size_t total = dataset.length();
    const std::size_t horizon = plan.horizon;
    const std::size_t history_len = plan.effective_lookback();
    const std::size_t train_end = total - horizon;

    const Normalizer normalizer = plan.normalization == Normalization::Zscore
                                      ? Normalizer::fit(dataset, 0, train_end)
                                      : Normalizer::identity(dataset.channel_count());
    Scorer scorer(plan, normalizer, train_end);

    CellResult cell;
    cell.windows_total = 1;
    try {
        const Frame train = normalizer.apply(dataset_frame(dataset, 0, train_end));
        auto model = make_forecaster(plan.method);
        model->fit(train, make_fit_context(plan, scorer.seasonal_period));
        const Frame history = train.tail(history_len);
        const Frame forecast = model->forecast(history, horizon);
        const Frame raw_actuals = dataset_frame(dataset, train_end, total);
        scorer.score_window(forecast, raw_actuals);
        cell.windows_scored = 1;
    } catch (const Error& e) {
        cell.windows_failed = 1;
        cell.first_failure = e.what();
        for (auto& outcome : scorer.outcomes) {
            outcome.failed = true;
            outcome.failure_reason = e.what();
        }
    }
    cell.metrics = scorer.finish();
    return cell;
}

CellResult run_rolling(const EvaluationPlan& plan) {
    plan.validate();
    const Dataset& dataset = *plan.dataset;
    const std::size_t total = dataset.length();
    const SplitRanges ranges = split_chronological(total, dataset.split);
    const std::size_t test_length = ranges.test_end - ranges.test_begin;
    const std::size_t history_len = plan.effective_lookback();

    const std::vector<std::size_t> offsets =
        enumerate_rolling_windows(test_length, plan.horizon, plan.stride);

    const Normalizer normalizer =
        plan.normalization == Normalization::Zscore
            ? Normalizer::fit(dataset, ranges.train_begin, ranges.train_end)
            : Normalizer::identity(dataset.channel_count());
    Scorer scorer(plan, normalizer, ranges.train_end);

    const Frame full = normalizer.apply(dataset_frame(dataset, 0, total));
    auto frame_slice = [&full](std::size_t begin, std::size_t end) {
        Frame out(end - begin, full.cols);
        std::copy(full.data.begin() + static_cast<std::ptrdiff_t>(begin * full.cols),
                  full.data.begin() + static_cast<std::ptrdiff_t>(end * full.cols),
                  out.data.begin());
        return out;
    };

    CellResult cell;
    cell.windows_total = offsets.size();

    std::unique_ptr<Forecaster> model = make_forecaster(plan.method);
    const bool retrain = plan.method.retrain_each_window.value_or(
        model->default_retrain_each_window());

    try {
        if (!retrain) {
            // one fit on train + validation
            model->fit(frame_slice(0, ranges.test_begin),
                       make_fit_context(plan, scorer.seasonal_period));
        }
    } catch (const Error& e) {
        cell.windows_failed = offsets.size();
        cell.first_failure = e.what();
        for (auto& outcome : scorer.outcomes) {
            outcome.failed = true;
            outcome.failure_reason = e.what();
        }
        cell.metrics = scorer.finish();
        return cell;
    }

    // Windows run in batches; batching only groups the loop and can never
    // change which windows are scored or the order of accumulation.
    for (std::size_t batch_start = 0; batch_start < offsets.size();
         batch_start += plan.batch_size) {
        const std::size_t batch_end =
            std::min(offsets.size(), batch_start + plan.batch_size);
        for (std::size_t w = batch_start; w < batch_end; ++w) {
            const std::size_t history_end = ranges.test_begin + offsets[w];
            try {
                if (retrain) {
                    model = make_forecaster(plan.method);
                    model->fit(frame_slice(0, history_end),
                               make_fit_context(plan, scorer.seasonal_period));
                }
                const Frame history =
                    frame_slice(history_end - history_len, history_end);
                const Frame forecast = model->forecast(history, plan.horizon);
                const Frame raw_actuals =
                    dataset_frame(dataset, history_end, history_end + plan.horizon);
                scorer.score_window(forecast, raw_actuals);
                ++cell.windows_scored;
            } catch (const Error& e) {
                ++cell.windows_failed;
                if (cell.first_failure.empty()) cell.first_failure = e.what();
            }
        }
    }

    cell.metrics = scorer.finish();
    return cell;
}

CellResult run_plan(const EvaluationPlan& plan) {
    return plan.strategy == Strategy::Fixed ? run_fixed(plan) : run_rolling(plan);
}

} // namespace tsbench
