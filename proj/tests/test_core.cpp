#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tsbench/core/rng.hpp"
#include "tsbench/core/series.hpp"

#include <cmath>
#include <limits>

using namespace tsbench;

TEST_CASE("validate_series accepts a minimal valid input") {
    const TimeSeries series = validate_series({1.0, 2.0, 3.0});
    CHECK(series.length() == 3);
    CHECK(series.seasonal_period == 1);
    CHECK(series.timestamps.empty());
}

TEST_CASE("validate_series rejects invalid inputs") {
    CHECK_THROWS_WITH_AS(validate_series({1.0, std::nan("")}), doctest::Contains("NonFinite"),
                         Error);
    CHECK_THROWS_AS(validate_series({1.0, std::numeric_limits<double>::infinity()}), Error);
    CHECK_THROWS_WITH_AS(validate_series({}), doctest::Contains("EmptySeries"), Error);

    try {
        validate_series({}, {});
        FAIL("expected EmptySeries");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::EmptySeries);
    }
}

TEST_CASE("validate_series checks timestamps") {
    CHECK_NOTHROW(validate_series({1.0, 2.0}, {10, 20}));
    try {
        validate_series({1.0, 2.0}, {10, 10});
        FAIL("expected NonMonotoneTimestamps");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonMonotoneTimestamps);
    }
    try {
        validate_series({1.0, 2.0}, {10});
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LengthMismatch);
    }
}

TEST_CASE("validate_series is idempotent") {
    const TimeSeries once = validate_series({3.0, 1.0, 4.0}, {1, 2, 3}, 2,
                                            FrequencyLabel::Daily);
    const TimeSeries twice = validate_series(once.values, once.timestamps,
                                             once.seasonal_period, once.frequency_label);
    CHECK(once.values == twice.values);
    CHECK(once.timestamps == twice.timestamps);
    CHECK(once.seasonal_period == twice.seasonal_period);
}

TEST_CASE("split_chronological exact divisions") {
    const SplitSpec spec_712{0.7, 0.1, 0.2};
    const SplitRanges r = split_chronological(10, spec_712);
    CHECK(r.train_begin == 0);
    CHECK(r.train_end == 7);
    CHECK(r.val_begin == 7);
    CHECK(r.val_end == 8);
    CHECK(r.test_begin == 8);
    CHECK(r.test_end == 10);

    const SplitSpec spec_622{0.6, 0.2, 0.2};
    const SplitRanges r2 = split_chronological(100, spec_622);
    CHECK(r2.train_end == 60);
    CHECK(r2.val_end - r2.val_begin == 20);
    CHECK(r2.test_end - r2.test_begin == 20);
}

TEST_CASE("split_chronological floor rule sends the remainder to test") {
    const SplitRanges r = split_chronological(11, SplitSpec{0.7, 0.1, 0.2});
    CHECK(r.train_end - r.train_begin == 7);
    CHECK(r.val_end - r.val_begin == 1);
    CHECK(r.test_end - r.test_begin == 3);
}

TEST_CASE("split_chronological rejects degenerate inputs") {
    try {
        split_chronological(3, SplitSpec{0.7, 0.1, 0.2});
        FAIL("expected TooShort");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TooShort);
    }
    CHECK_THROWS_AS(split_chronological(100, SplitSpec{0.5, 0.1, 0.2}), Error);
    CHECK_THROWS_AS(split_chronological(100, SplitSpec{1.0, 0.0, 0.0}), Error);
}

TEST_CASE("split ranges partition [0, T) for random lengths and splits") {
    Rng rng(12345);
    const double ratios[][3] = {
        {0.7, 0.1, 0.2}, {0.6, 0.2, 0.2}, {0.5, 0.25, 0.25}, {0.8, 0.1, 0.1}};
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t length = 10 + rng.next_u64() % 5000;
        const auto& f = ratios[rng.next_u64() % 4];
        const SplitRanges r = split_chronological(length, SplitSpec{f[0], f[1], f[2]});
        CHECK(r.train_begin == 0);
        CHECK(r.train_end == r.val_begin);
        CHECK(r.val_end == r.test_begin);
        CHECK(r.test_end == length);
        CHECK(r.train_end > r.train_begin);
        CHECK(r.val_end > r.val_begin);
        CHECK(r.test_end > r.test_begin);
        // train/val never exceed their nominal share
        CHECK(static_cast<double>(r.train_end) <=
              f[0] * static_cast<double>(length) + 1e-6);
        CHECK(static_cast<double>(r.val_end) <=
              (f[0] + f[1]) * static_cast<double>(length) + 1e-6);
    }
}

TEST_CASE("dataset validation checks channel consistency") {
    Dataset dataset;
    dataset.name = "demo";
    dataset.channels.push_back(validate_series({1, 2, 3, 4, 5, 6, 7, 8, 9, 10}));
    dataset.channels.push_back(validate_series({2, 4, 6, 8, 10, 12, 14, 16, 18, 20}));
    CHECK_NOTHROW(dataset.validate());

    dataset.channels.push_back(validate_series({1, 2}));
    try {
        dataset.validate();
        FAIL("expected LengthMismatch");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LengthMismatch);
    }
}

TEST_CASE("frame helpers") {
    Dataset dataset;
    dataset.channels.push_back(validate_series({1, 2, 3, 4}));
    dataset.channels.push_back(validate_series({10, 20, 30, 40}));
    const Frame frame = dataset_frame(dataset, 1, 3);
    CHECK(frame.rows == 2);
    CHECK(frame.cols == 2);
    CHECK(frame.at(0, 0) == 2.0);
    CHECK(frame.at(1, 1) == 30.0);

    const Frame last = frame.tail(1);
    CHECK(last.rows == 1);
    CHECK(last.at(0, 0) == 3.0);
    CHECK(last.at(0, 1) == 30.0);

    CHECK(frame.column(1) == std::vector<double>{20.0, 30.0});
    CHECK(frame.all_finite());
}

TEST_CASE("default seasonal periods per frequency") {
    CHECK(default_seasonal_period(FrequencyLabel::Yearly) == 1);
    CHECK(default_seasonal_period(FrequencyLabel::Quarterly) == 4);
    CHECK(default_seasonal_period(FrequencyLabel::Monthly) == 12);
    CHECK(default_seasonal_period(FrequencyLabel::Weekly) == 52);
    CHECK(default_seasonal_period(FrequencyLabel::Daily) == 7);
    CHECK(default_seasonal_period(FrequencyLabel::Hourly) == 24);
    CHECK(default_seasonal_period(FrequencyLabel::Other) == 1);
}

TEST_CASE("rng is deterministic and roughly standard normal") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());

    Rng rng(7);
    double sum = 0.0, sum2 = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) {
        const double g = rng.next_gaussian();
        sum += g;
        sum2 += g * g;
    }
    CHECK(std::fabs(sum / n) < 0.03);
    CHECK(std::fabs(sum2 / n - 1.0) < 0.05);
}
