#include "tsbench/characterize/stats.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>

namespace tsbench {

double mean_of(std::span<const double> values) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

double population_variance(std::span<const double> values) {
    const double m = mean_of(values);
    double sum = 0.0;
    for (double v : values) sum += (v - m) * (v - m);
    return sum / static_cast<double>(values.size());
}

double population_covariance(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.empty()) {
        throw Error(ErrorCode::LengthMismatch, "covariance requires equal non-empty spans");
    }
    const double ma = mean_of(a);
    const double mb = mean_of(b);
    double sum = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) sum += (a[i] - ma) * (b[i] - mb);
    return sum / static_cast<double>(a.size());
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
    const double va = population_variance(a);
    const double vb = population_variance(b);
    if (va <= 0.0 || vb <= 0.0) {
        throw Error(ErrorCode::DegenerateVariance, "constant input to Pearson correlation");
    }
    return population_covariance(a, b) / std::sqrt(va * vb);
}

double median_of(std::vector<double> values) {
    if (values.empty()) {
        throw Error(ErrorCode::EmptyList, "median of empty list");
    }
    const std::size_t n = values.size();
    const std::size_t mid = n / 2;
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid),
                     values.end());
    double upper = values[mid];
    if (n % 2 == 1) return upper;
    double lower = *std::max_element(values.begin(),
                                     values.begin() + static_cast<std::ptrdiff_t>(mid));
    return 0.5 * (lower + upper);
}

std::vector<double> acf(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (n < 2 || max_lag < 1 || max_lag >= n) {
        throw Error(ErrorCode::TooShort, "acf needs T >= 2 and 1 <= max_lag < T");
    }
    const double m = mean_of(values);
    double c0 = 0.0;
    for (double v : values) c0 += (v - m) * (v - m);
    c0 /= static_cast<double>(n);
    if (c0 <= 0.0) {
        throw Error(ErrorCode::DegenerateVariance, "acf of constant series");
    }
    std::vector<double> result(max_lag + 1);
    result[0] = 1.0;
    for (std::size_t k = 1; k <= max_lag; ++k) {
        double ck = 0.0;
        for (std::size_t t = 0; t + k < n; ++t) {
            ck += (values[t] - m) * (values[t + k] - m);
        }
        ck /= static_cast<double>(n);
        result[k] = ck / c0;
    }
    return result;
}

std::size_t first_zero_acf(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 3) {
        throw Error(ErrorCode::TooShort, "first_zero_acf needs T >= 3");
    }
    const std::size_t cap = std::min(n - 1, n / 2);
    const std::vector<double> r = acf(values, cap);
    for (std::size_t k = 1; k <= cap; ++k) {
        if (r[k] <= 0.0) return k;
    }
    return cap;
}

namespace {

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

// MacKinnon (1994) response-surface coefficients for the constant-only
// Dickey-Fuller regression: p = Phi(polynomial(tau)).
double mackinnon_pvalue_constant(double tau) {
    constexpr double tau_max = 2.74;
    constexpr double tau_min = -18.83;
    constexpr double tau_star = -1.61;
    if (tau > tau_max) return 1.0;
    if (tau < tau_min) return 0.0;
    double poly;
    if (tau <= tau_star) {
        constexpr double b[3] = {2.1659, 1.4412, 3.8269e-2};
        poly = b[0] + b[1] * tau + b[2] * tau * tau;
    } else {
        constexpr double b[4] = {1.7339, 9.3202e-1, -1.2745e-1, -1.0368e-2};
        poly = b[0] + tau * (b[1] + tau * (b[2] + tau * b[3]));
    }
    return normal_cdf(poly);
}

} // namespace

AdfResult adf_test(std::span<const double> values) {
    const std::size_t n = values.size();
    if (n < 20) {
        throw Error(ErrorCode::TooShort, "adf needs T >= 20");
    }
    if (population_variance(values) <= 0.0) {
        throw Error(ErrorCode::DegenerateVariance, "adf of constant series");
    }
    const int lags = static_cast<int>(
        std::floor(12.0 * std::pow(static_cast<double>(n) / 100.0, 0.25)));

    // diff[t] = y[t+1] - y[t]
    std::vector<double> diff(n - 1);
    for (std::size_t t = 0; t + 1 < n; ++t) diff[t] = values[t + 1] - values[t];

    const int nobs = static_cast<int>(n) - 1 - lags;
    const int nparams = lags + 2; // level, lagged diffs, constant
    if (nobs <= nparams) {
        throw Error(ErrorCode::TooShort, "adf has too few observations for lag order");
    }

    Eigen::MatrixXd X(nobs, nparams);
    Eigen::VectorXd y(nobs);
    for (int i = 0; i < nobs; ++i) {
        const int t = lags + i; // index into diff
        y(i) = diff[static_cast<std::size_t>(t)];
        X(i, 0) = values[static_cast<std::size_t>(t)]; // level preceding diff[t]
        for (int j = 1; j <= lags; ++j) {
            X(i, j) = diff[static_cast<std::size_t>(t - j)];
        }
        X(i, nparams - 1) = 1.0;
    }

    const Eigen::MatrixXd xtx = X.transpose() * X;
    Eigen::LDLT<Eigen::MatrixXd> solver(xtx);
    if (solver.info() != Eigen::Success) {
        throw Error(ErrorCode::DegenerateVariance, "adf regression is singular");
    }
    const Eigen::VectorXd beta = solver.solve(X.transpose() * y);
    const Eigen::VectorXd residuals = y - X * beta;
    const double sigma2 = residuals.squaredNorm() / static_cast<double>(nobs - nparams);
    const Eigen::MatrixXd xtx_inv =
        solver.solve(Eigen::MatrixXd::Identity(nparams, nparams));
    const double se = std::sqrt(sigma2 * xtx_inv(0, 0));
    if (!(se > 0.0) || !std::isfinite(se)) {
        throw Error(ErrorCode::DegenerateVariance, "adf standard error is degenerate");
    }

    AdfResult result;
    result.statistic = beta(0) / se;
    result.pvalue = mackinnon_pvalue_constant(result.statistic);
    result.lags = lags;
    result.nobs = nobs;
    return result;
}

double adf_pvalue(std::span<const double> values) { return adf_test(values).pvalue; }

bool stationarity(std::span<const double> values) {
    return adf_pvalue(values) <= 0.05;
}

} // namespace tsbench
