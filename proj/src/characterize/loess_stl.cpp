#include "tsbench/characterize/stl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsbench {

namespace {

double tricube(double u) {
    if (u >= 1.0) return 0.0;
    const double c = 1.0 - u * u * u;
    return c * c * c;
}

int smallest_odd_at_least(double x) {
    int v = std::max(1, static_cast<int>(std::ceil(x)));
    return (v % 2 == 0) ? v + 1 : v;
}

// One loess evaluation at (possibly out-of-range) position x over points at
// integer abscissae 0..n-1. Neighbourhood = the `span` nearest points.
double loess_at(std::span<const double> values, std::span<const double> rw, int span,
                int degree, double x) {
    const int n = static_cast<int>(values.size());
    if (n == 1) return values[0];
    const int q = std::min(span, n);

    // nearest-q window is contiguous; slide it to minimize the max distance
    int lo = std::clamp(static_cast<int>(std::floor(x)) - q / 2, 0, n - q);
    while (lo > 0 && (x - (lo - 1)) < ((lo + q - 1) - x)) --lo;
    while (lo + q < n && (x - lo) > ((lo + q) - x)) ++lo;
    const int hi = lo + q - 1;

    double lambda = std::max(x - lo, hi - x);
    if (span > n) {
        lambda += static_cast<double>(span - n) / 2.0;
    }
    if (lambda <= 0.0) lambda = 1.0;

    double w_sum = 0.0, wx_sum = 0.0, wxx_sum = 0.0, wy_sum = 0.0, wxy_sum = 0.0;
    for (int i = lo; i <= hi; ++i) {
        double w = tricube(std::fabs(i - x) / lambda);
        if (!rw.empty()) w *= rw[static_cast<std::size_t>(i)];
        if (w <= 0.0) continue;
        const double dx = i - x;
        w_sum += w;
        wx_sum += w * dx;
        wxx_sum += w * dx * dx;
        wy_sum += w * values[static_cast<std::size_t>(i)];
        wxy_sum += w * dx * values[static_cast<std::size_t>(i)];
    }
    if (w_sum <= 0.0) {
        // robustness weights wiped the whole window; fall back to tricube only
        for (int i = lo; i <= hi; ++i) {
            double w = tricube(std::fabs(i - x) / lambda);
            const double dx = i - x;
            w_sum += w;
            wx_sum += w * dx;
            wxx_sum += w * dx * dx;
            wy_sum += w * values[static_cast<std::size_t>(i)];
            wxy_sum += w * dx * values[static_cast<std::size_t>(i)];
        }
    }
    if (degree == 0) return wy_sum / w_sum;
    const double denom = w_sum * wxx_sum - wx_sum * wx_sum;
    if (std::fabs(denom) < 1e-12 * std::max(1.0, w_sum * wxx_sum)) {
        return wy_sum / w_sum;
    }
    return (wxx_sum * wy_sum - wx_sum * wxy_sum) / denom;
}

// Centered moving average, output length n - window + 1.
std::vector<double> moving_average(const std::vector<double>& values, int window) {
    const std::size_t n = values.size();
    const std::size_t w = static_cast<std::size_t>(window);
    std::vector<double> out(n - w + 1);
    double sum = std::accumulate(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(w), 0.0);
    out[0] = sum / static_cast<double>(w);
    for (std::size_t i = 1; i < out.size(); ++i) {
        sum += values[i + w - 1] - values[i - 1];
        out[i] = sum / static_cast<double>(w);
    }
    return out;
}

std::vector<double> bisquare_weights(const std::vector<double>& residuals) {
    std::vector<double> abs_r(residuals.size());
    for (std::size_t i = 0; i < residuals.size(); ++i) abs_r[i] = std::fabs(residuals[i]);
    std::vector<double> sorted = abs_r;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2),
                     sorted.end());
    double med = sorted[sorted.size() / 2];
    if (sorted.size() % 2 == 0) {
        med = 0.5 * (med + *std::max_element(sorted.begin(),
                                             sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2)));
    }
    const double h = 6.0 * med;
    std::vector<double> weights(residuals.size(), 1.0);
    if (h <= 0.0) return weights; // essentially perfect fit
    for (std::size_t i = 0; i < residuals.size(); ++i) {
        const double u = abs_r[i] / h;
        weights[i] = (u < 1.0) ? (1.0 - u * u) * (1.0 - u * u) : 0.0;
    }
    return weights;
}

} // namespace

std::vector<double> loess_smooth(std::span<const double> values, int span, int degree,
                                 std::span<const double> robustness_weights) {
    const std::size_t n = values.size();
    if (n == 0) {
        throw Error(ErrorCode::EmptySeries, "loess of empty input");
    }
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        out[i] = loess_at(values, robustness_weights, span, degree,
                          static_cast<double>(i));
    }
    return out;
}

Decomposition stl_decompose(std::span<const double> values, int period,
                            const StlOptions& options) {
    const std::size_t n = values.size();
    Decomposition dec;

    if (period < 2) {
        if (n < 2) {
            throw Error(ErrorCode::TooShort, "stl needs T >= 2");
        }
        const int span = smallest_odd_at_least(0.75 * static_cast<double>(n));
        dec.trend = loess_smooth(values, span, 1);
        dec.seasonal.assign(n, 0.0);
        dec.remainder.resize(n);
        for (std::size_t i = 0; i < n; ++i) dec.remainder[i] = values[i] - dec.trend[i];
        return dec;
    }

    const std::size_t p = static_cast<std::size_t>(period);
    if (n < 2 * p + 1) {
        throw Error(ErrorCode::TooShort, "stl needs T >= 2*period + 1");
    }

    const int ns = options.seasonal_span | 1;
    const int nl = smallest_odd_at_least(static_cast<double>(period));
    const int nt = smallest_odd_at_least(1.5 * static_cast<double>(period) /
                                         (1.0 - 1.5 / static_cast<double>(ns)));

    std::vector<double> trend(n, 0.0);
    std::vector<double> seasonal(n, 0.0);
    std::vector<double> weights; // empty = all ones

    auto inner_pass = [&]() {
        for (int it = 0; it < options.inner_iterations; ++it) {
            // 1. detrend
            std::vector<double> detrended(n);
            for (std::size_t i = 0; i < n; ++i) detrended[i] = values[i] - trend[i];

            // 2. cycle-subseries loess, extended one cycle at each end.
            // cycle_sub covers positions -p .. n+p-1 (offset p).
            std::vector<double> cycle_sub(n + 2 * p, 0.0);
            for (std::size_t phase = 0; phase < p; ++phase) {
                std::vector<double> sub;
                std::vector<double> sub_w;
                for (std::size_t t = phase; t < n; t += p) {
                    sub.push_back(detrended[t]);
                    if (!weights.empty()) sub_w.push_back(weights[t]);
                }
                const int m = static_cast<int>(sub.size());
                for (int j = -1; j <= m; ++j) {
                    const double fitted = loess_at(sub, sub_w, ns, 1,
                                                   static_cast<double>(j));
                    const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(phase) +
                                               static_cast<std::ptrdiff_t>(j) *
                                                   static_cast<std::ptrdiff_t>(p);
                    const std::ptrdiff_t idx = pos + static_cast<std::ptrdiff_t>(p);
                    if (idx >= 0 && idx < static_cast<std::ptrdiff_t>(cycle_sub.size())) {
                        cycle_sub[static_cast<std::size_t>(idx)] = fitted;
                    }
                }
            }

            // 3. low-pass filter the extended seasonal to extract what belongs
            // to the trend: MA(p) twice, MA(3), then a loess polish.
            std::vector<double> low = moving_average(cycle_sub, period);
            low = moving_average(low, period);
            low = moving_average(low, 3);
            low = loess_smooth(low, nl, 1);

            // 4. seasonal = extended smooth minus its low-pass component
            for (std::size_t i = 0; i < n; ++i) {
                seasonal[i] = cycle_sub[i + p] - low[i];
            }

            // 5-6. deseasonalize and re-estimate trend
            std::vector<double> deseasonalized(n);
            for (std::size_t i = 0; i < n; ++i) deseasonalized[i] = values[i] - seasonal[i];
            trend = loess_smooth(deseasonalized, nt, 1, weights);
        }
    };

    inner_pass();
    for (int outer = 0; outer < options.outer_iterations; ++outer) {
        std::vector<double> residuals(n);
        for (std::size_t i = 0; i < n; ++i) {
            residuals[i] = values[i] - trend[i] - seasonal[i];
        }
        weights = bisquare_weights(residuals);
        inner_pass();
    }

    dec.trend = std::move(trend);
    dec.seasonal = std::move(seasonal);
    dec.remainder.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        dec.remainder[i] = values[i] - dec.trend[i] - dec.seasonal[i];
    }
    return dec;
}

} // namespace tsbench
