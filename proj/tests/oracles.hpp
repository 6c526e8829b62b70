// Test-only reference implementations, written independently of the library
// code paths they check. Everything here is a direct, naive transcription of
// the defining formulas.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracle {

inline double mae(const std::vector<double>& f, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += std::fabs(f[k] - y[k]);
    return s / static_cast<double>(f.size());
}

inline double mape(const std::vector<double>& f, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        s += std::fabs(y[k] - f[k]) / std::fabs(y[k]);
    }
    return 100.0 * s / static_cast<double>(f.size());
}

inline double mse(const std::vector<double>& f, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += (f[k] - y[k]) * (f[k] - y[k]);
    return s / static_cast<double>(f.size());
}

inline double smape(const std::vector<double>& f, const std::vector<double>& y) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        s += std::fabs(f[k] - y[k]) / ((std::fabs(y[k]) + std::fabs(f[k])) / 2.0);
    }
    return 100.0 * s / static_cast<double>(f.size());
}

inline double rmse(const std::vector<double>& f, const std::vector<double>& y) {
    return std::sqrt(mse(f, y));
}

inline double wape(const std::vector<double>& f, const std::vector<double>& y) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        num += std::fabs(y[k] - f[k]);
        den += std::fabs(y[k]);
    }
    return num / den;
}

inline double msmape(const std::vector<double>& f, const std::vector<double>& y,
                     double epsilon = 0.1) {
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double den =
            std::max(std::fabs(y[k]) + std::fabs(f[k]) + epsilon, 0.5 + epsilon) / 2.0;
        s += std::fabs(f[k] - y[k]) / den;
    }
    return 100.0 * s / static_cast<double>(f.size());
}

inline double mase(const std::vector<double>& f, const std::vector<double>& y,
                   const std::vector<double>& train, int season) {
    const std::size_t M = train.size();
    const std::size_t S = static_cast<std::size_t>(season);
    double denom_sum = 0.0;
    for (std::size_t k = S; k < M; ++k) {
        denom_sum += std::fabs(train[k] - train[k - S]);
    }
    const double h = static_cast<double>(f.size());
    double num = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) num += std::fabs(f[k] - y[k]);
    return num / (h / static_cast<double>(M - S) * denom_sum);
}

/// Matrix least squares via plain normal equations and Gauss-Jordan
/// elimination; used to cross-check the library's regression-based fits.
inline std::vector<double> solve_normal_equations(
    const std::vector<std::vector<double>>& X, const std::vector<double>& y) {
    const std::size_t n = X.size();
    const std::size_t p = X.front().size();
    std::vector<std::vector<double>> a(p, std::vector<double>(p + 1, 0.0));
    for (std::size_t i = 0; i < p; ++i) {
        for (std::size_t j = 0; j < p; ++j) {
            double s = 0.0;
            for (std::size_t r = 0; r < n; ++r) s += X[r][i] * X[r][j];
            a[i][j] = s;
        }
        double s = 0.0;
        for (std::size_t r = 0; r < n; ++r) s += X[r][i] * y[r];
        a[i][p] = s;
    }
    for (std::size_t col = 0; col < p; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < p; ++r) {
            if (std::fabs(a[r][col]) > std::fabs(a[pivot][col])) pivot = r;
        }
        std::swap(a[col], a[pivot]);
        if (std::fabs(a[col][col]) < 1e-12) {
            throw std::runtime_error("oracle: singular normal equations");
        }
        const double inv = 1.0 / a[col][col];
        for (std::size_t j = col; j <= p; ++j) a[col][j] *= inv;
        for (std::size_t r = 0; r < p; ++r) {
            if (r == col) continue;
            const double factor = a[r][col];
            for (std::size_t j = col; j <= p; ++j) a[r][j] -= factor * a[col][j];
        }
    }
    std::vector<double> beta(p);
    for (std::size_t i = 0; i < p; ++i) beta[i] = a[i][p];
    return beta;
}

} // namespace oracle
