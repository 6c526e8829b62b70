// Shared synthetic-series generators for the test suites.
#pragma once

#include "tsbench/core/rng.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

namespace testutil {

inline std::vector<double> gaussian_noise(std::size_t n, std::uint64_t seed,
                                          double sigma = 1.0) {
    tsbench::Rng rng(seed);
    std::vector<double> x(n);
    for (auto& v : x) v = sigma * rng.next_gaussian();
    return x;
}

inline std::vector<double> random_walk(std::size_t n, std::uint64_t seed) {
    tsbench::Rng rng(seed);
    std::vector<double> x(n);
    double level = 0.0;
    for (auto& v : x) {
        level += rng.next_gaussian();
        v = level;
    }
    return x;
}

inline std::vector<double> sine_wave(std::size_t n, double period, double amplitude = 1.0,
                                     double phase = 0.0) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) {
        x[t] = amplitude * std::sin(2.0 * M_PI * static_cast<double>(t) / period + phase);
    }
    return x;
}

inline std::vector<double> ramp(std::size_t n, double slope = 1.0, double intercept = 0.0) {
    std::vector<double> x(n);
    for (std::size_t t = 0; t < n; ++t) x[t] = intercept + slope * static_cast<double>(t);
    return x;
}

inline std::vector<double> add(std::vector<double> a, const std::vector<double>& b) {
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b[i];
    return a;
}

} // namespace testutil
