#include "tsbench/forecast/baselines.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tsbench {

// ---------------------------------------------------------------- naive ----

void NaiveForecaster::fit(const Frame& train, const FitContext&) {
    if (train.rows == 0) {
        throw Error(ErrorCode::InsufficientData, "naive needs at least one point");
    }
    record_training_slice(train);
}

Frame NaiveForecaster::forecast(const Frame& history, std::size_t horizon) const {
    check_history(history, horizon);
    Frame out(horizon, history.cols);
    for (std::size_t h = 0; h < horizon; ++h) {
        for (std::size_t c = 0; c < history.cols; ++c) {
            out.at(h, c) = history.at(history.rows - 1, c);
        }
    }
    check_output(out);
    return out;
}

// ------------------------------------------------------- seasonal naive ----

void SeasonalNaiveForecaster::fit(const Frame& train, const FitContext& context) {
    period_ = static_cast<std::size_t>(std::max(1, context.seasonal_period));
    if (train.rows < period_) {
        throw Error(ErrorCode::InsufficientData,
                    "seasonal_naive needs at least one full cycle");
    }
    record_training_slice(train);
}

Frame SeasonalNaiveForecaster::forecast(const Frame& history, std::size_t horizon) const {
    check_history(history, horizon);
    if (history.rows < period_) {
        throw Error(ErrorCode::InsufficientData,
                    "history shorter than the seasonal period");
    }
    Frame out(horizon, history.cols);
    for (std::size_t h = 0; h < horizon; ++h) {
        const std::size_t src = history.rows - period_ + (h % period_);
        for (std::size_t c = 0; c < history.cols; ++c) {
            out.at(h, c) = history.at(src, c);
        }
    }
    check_output(out);
    return out;
}

// ----------------------------------------------------- linear regression ----

namespace {

std::vector<double> solve_least_squares(const Eigen::MatrixXd& X,
                                        const Eigen::VectorXd& y) {
    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::VectorXd beta = qr.solve(y);
    if (!beta.allFinite()) {
        throw Error(ErrorCode::SingularSystem, "least squares produced non-finite weights");
    }
    return {beta.data(), beta.data() + beta.size()};
}

} // namespace

void LinearRegressionForecaster::fit(const Frame& train, const FitContext& context) {
    lookback_ = context.lookback > 0
                    ? context.lookback
                    : static_cast<std::size_t>(
                          std::lround(1.25 * static_cast<double>(context.horizon)));
    lookback_ = std::max<std::size_t>(lookback_, 1);
    fitted_horizon_ = mode_ == PredictionMode::Dms ? std::max<std::size_t>(context.horizon, 1)
                                                   : 1;
    if (train.rows < lookback_ + fitted_horizon_) {
        throw Error(ErrorCode::InsufficientData,
                    "train slice shorter than lookback + horizon");
    }

    heads_.assign(fitted_horizon_, std::vector<std::vector<double>>(train.cols));
    for (std::size_t step = 1; step <= fitted_horizon_; ++step) {
        const std::size_t rows = train.rows - lookback_ - step + 1;
        for (std::size_t c = 0; c < train.cols; ++c) {
            Eigen::MatrixXd X(rows, lookback_ + 1);
            Eigen::VectorXd y(rows);
            for (std::size_t r = 0; r < rows; ++r) {
                for (std::size_t l = 0; l < lookback_; ++l) {
                    X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(l)) =
                        train.at(r + l, c);
                }
                X(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(lookback_)) = 1.0;
                y(static_cast<Eigen::Index>(r)) = train.at(r + lookback_ + step - 1, c);
            }
            heads_[step - 1][c] = solve_least_squares(X, y);
        }
    }
    record_training_slice(train);
}

Frame LinearRegressionForecaster::forecast(const Frame& history,
                                           std::size_t horizon) const {
    check_history(history, horizon);
    if (history.rows < lookback_) {
        throw Error(ErrorCode::InsufficientData, "history shorter than lookback");
    }
    Frame out(horizon, history.cols);
    if (mode_ == PredictionMode::Dms) {
        if (horizon > fitted_horizon_) {
            throw Error(ErrorCode::ShapeMismatch,
                        "model fitted for horizon " + std::to_string(fitted_horizon_));
        }
        for (std::size_t c = 0; c < history.cols; ++c) {
            for (std::size_t step = 0; step < horizon; ++step) {
                const auto& w = heads_[step][c];
                double value = w[lookback_];
                for (std::size_t l = 0; l < lookback_; ++l) {
                    value += w[l] * history.at(history.rows - lookback_ + l, c);
                }
                out.at(step, c) = value;
            }
        }
    } else {
        for (std::size_t c = 0; c < history.cols; ++c) {
            std::vector<double> window(lookback_);
            for (std::size_t l = 0; l < lookback_; ++l) {
                window[l] = history.at(history.rows - lookback_ + l, c);
            }
            const auto& w = heads_[0][c];
            for (std::size_t step = 0; step < horizon; ++step) {
                double value = w[lookback_];
                for (std::size_t l = 0; l < lookback_; ++l) value += w[l] * window[l];
                out.at(step, c) = value;
                window.erase(window.begin());
                window.push_back(value);
            }
        }
    }
    check_output(out);
    return out;
}

// -------------------------------------------------------------------- var ----

void VarForecaster::fit(const Frame& train, const FitContext&) {
    const std::size_t n = train.cols;
    const std::size_t p = static_cast<std::size_t>(order_);
    const std::size_t nparams = 1 + n * p;
    if (train.rows <= p || train.rows - p < nparams) {
        throw Error(ErrorCode::InsufficientData,
                    "var(" + std::to_string(order_) + ") needs more than " +
                        std::to_string(p * n + p) + " observations");
    }
    const std::size_t rows = train.rows - p;

    Eigen::MatrixXd X(rows, nparams);
    Eigen::MatrixXd Y(rows, n);
    for (std::size_t r = 0; r < rows; ++r) {
        const std::size_t t = r + p;
        X(static_cast<Eigen::Index>(r), 0) = 1.0;
        for (std::size_t lag = 1; lag <= p; ++lag) {
            for (std::size_t c = 0; c < n; ++c) {
                X(static_cast<Eigen::Index>(r),
                  static_cast<Eigen::Index>(1 + (lag - 1) * n + c)) = train.at(t - lag, c);
            }
        }
        for (std::size_t c = 0; c < n; ++c) {
            Y(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = train.at(t, c);
        }
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(X);
    Eigen::MatrixXd beta;
    if (qr.rank() < static_cast<Eigen::Index>(nparams)) {
        // ridge fallback keeps collinear channels estimable
        const double lambda = 1e-8;
        Eigen::MatrixXd gram = X.transpose() * X;
        gram.diagonal().array() += lambda;
        beta = gram.ldlt().solve(X.transpose() * Y);
    } else {
        beta = qr.solve(Y);
    }
    if (!beta.allFinite()) {
        throw Error(ErrorCode::SingularSystem, "var estimation failed");
    }
    beta_.assign(beta.data(), beta.data() + beta.size());
    // Eigen stores column-major: beta_[col * nparams + row]
    record_training_slice(train);
}

double VarForecaster::coefficient(int lag, std::size_t target, std::size_t source) const {
    const std::size_t nparams = 1 + fitted_channels_ * static_cast<std::size_t>(order_);
    const std::size_t row = 1 + static_cast<std::size_t>(lag) * fitted_channels_ + source;
    return beta_[target * nparams + row];
}

double VarForecaster::intercept(std::size_t target) const {
    const std::size_t nparams = 1 + fitted_channels_ * static_cast<std::size_t>(order_);
    return beta_[target * nparams];
}

Frame VarForecaster::forecast(const Frame& history, std::size_t horizon) const {
    check_history(history, horizon);
    const std::size_t p = static_cast<std::size_t>(order_);
    const std::size_t n = history.cols;
    if (history.rows < p) {
        throw Error(ErrorCode::InsufficientData, "history shorter than var order");
    }
    // state[0] = most recent row
    std::vector<std::vector<double>> state(p, std::vector<double>(n));
    for (std::size_t lag = 0; lag < p; ++lag) {
        for (std::size_t c = 0; c < n; ++c) {
            state[lag][c] = history.at(history.rows - 1 - lag, c);
        }
    }
    Frame out(horizon, n);
    for (std::size_t h = 0; h < horizon; ++h) {
        std::vector<double> next(n);
        for (std::size_t target = 0; target < n; ++target) {
            double value = intercept(target);
            for (std::size_t lag = 0; lag < p; ++lag) {
                for (std::size_t source = 0; source < n; ++source) {
                    value += coefficient(static_cast<int>(lag), target, source) *
                             state[lag][source];
                }
            }
            next[target] = value;
        }
        for (std::size_t c = 0; c < n; ++c) out.at(h, c) = next[c];
        for (std::size_t lag = p; lag-- > 1;) state[lag] = state[lag - 1];
        state[0] = next;
    }
    check_output(out);
    return out;
}

// -------------------------------------------------------------------- ets ----

namespace {

struct EtsState {
    double level = 0.0;
    double slope = 0.0;
    std::vector<double> seasonal;
};

// One-step filter over the series; returns the sum of squared one-step
// errors and leaves the final state in `state`.
double ets_filter(const std::vector<double>& x, int period,
                  const EtsForecaster::Weights& w, EtsState& state) {
    const std::size_t n = x.size();
    const bool seasonal = period >= 2 && n >= 2 * static_cast<std::size_t>(period);
    const std::size_t s = seasonal ? static_cast<std::size_t>(period) : 0;

    if (seasonal) {
        double first = 0.0, second = 0.0;
        for (std::size_t i = 0; i < s; ++i) {
            first += x[i];
            second += x[i + s];
        }
        first /= static_cast<double>(s);
        second /= static_cast<double>(s);
        state.level = first;
        state.slope = (second - first) / static_cast<double>(s);
        state.seasonal.resize(s);
        for (std::size_t i = 0; i < s; ++i) state.seasonal[i] = x[i] - first;
    } else {
        state.level = x[0];
        state.slope = n >= 2 ? x[1] - x[0] : 0.0;
        state.seasonal.clear();
    }

    double sse = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        const std::size_t phase = seasonal ? t % s : 0;
        const double seasonal_term = seasonal ? state.seasonal[phase] : 0.0;
        const double prediction = state.level + state.slope + seasonal_term;
        const double error = x[t] - prediction;
        sse += error * error;

        const double previous_level = state.level;
        state.level = w.alpha * (x[t] - seasonal_term) +
                      (1.0 - w.alpha) * (state.level + state.slope);
        state.slope = w.beta * (state.level - previous_level) + (1.0 - w.beta) * state.slope;
        if (seasonal) {
            state.seasonal[phase] =
                w.gamma * (x[t] - state.level) + (1.0 - w.gamma) * state.seasonal[phase];
        }
    }
    return sse;
}

} // namespace

void EtsForecaster::fit(const Frame& train, const FitContext& context) {
    if (train.rows < 2) {
        throw Error(ErrorCode::InsufficientData, "ets needs at least two points");
    }
    period_ = std::max(1, context.seasonal_period);
    const bool seasonal =
        period_ >= 2 && train.rows >= 2 * static_cast<std::size_t>(period_);

    weights_.assign(train.cols, Weights{});
    for (std::size_t c = 0; c < train.cols; ++c) {
        const std::vector<double> x = train.column(c);
        double best_sse = std::numeric_limits<double>::infinity();
        Weights best;
        EtsState state;
        for (int ai = 1; ai <= 9; ++ai) {
            for (int bi = 1; bi <= 9; ++bi) {
                for (int gi = 1; gi <= (seasonal ? 9 : 1); ++gi) {
                    Weights w{ai * 0.1, bi * 0.1, gi * 0.1};
                    const double sse = ets_filter(x, period_, w, state);
                    if (sse < best_sse) {
                        best_sse = sse;
                        best = w;
                    }
                }
            }
        }
        weights_[c] = best;
    }
    record_training_slice(train);
}

Frame EtsForecaster::forecast(const Frame& history, std::size_t horizon) const {
    check_history(history, horizon);
    if (history.rows < 2) {
        throw Error(ErrorCode::InsufficientData, "ets needs at least two history points");
    }
    Frame out(horizon, history.cols);
    for (std::size_t c = 0; c < history.cols; ++c) {
        const std::vector<double> x = history.column(c);
        EtsState state;
        ets_filter(x, period_, weights_[c], state);
        const bool seasonal = !state.seasonal.empty();
        for (std::size_t h = 1; h <= horizon; ++h) {
            double value = state.level + static_cast<double>(h) * state.slope;
            if (seasonal) {
                const std::size_t phase =
                    (history.rows - 1 + h) % state.seasonal.size();
                value += state.seasonal[phase];
            }
            out.at(h - 1, c) = value;
        }
    }
    check_output(out);
    return out;
}

} // namespace tsbench
