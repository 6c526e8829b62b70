#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "test_util.hpp"
#include "tsbench/metrics/metrics.hpp"

#include <cmath>

using namespace tsbench;

namespace {

MetricContext make_context(std::vector<double> f, std::vector<double> y) {
    MetricContext ctx;
    ctx.forecasts = std::move(f);
    ctx.actuals = std::move(y);
    return ctx;
}

} // namespace

TEST_CASE("hand-evaluated error metrics") {
    MetricContext ctx = make_context({2, 4}, {1, 2});
    CHECK(compute_metric(MetricKind::Mae, ctx) == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(compute_metric(MetricKind::Mse, ctx) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(compute_metric(MetricKind::Rmse, ctx) ==
          doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
}

TEST_CASE("perfect forecast scores zero on every metric") {
    MetricContext ctx = make_context({1.5, 2.5, 3.5}, {1.5, 2.5, 3.5});
    ctx.train_channels = {{1.0, 2.0, 3.0, 4.0}};
    ctx.seasonal_period = 1;
    for (MetricKind kind : kAllMetrics) {
        CHECK(compute_metric(kind, ctx) == 0.0);
    }
}

TEST_CASE("msmape hand case") {
    MetricContext ctx = make_context({0.1}, {0.2});
    const double value = compute_metric(MetricKind::Msmape, ctx);
    // denominator max(0.4, 0.6)/2 = 0.3
    CHECK(value == doctest::Approx(100.0 * 0.1 / 0.3).epsilon(1e-12));
    CHECK(value == doctest::Approx(33.3333333333).epsilon(1e-9));
}

TEST_CASE("mase hand case") {
    MetricContext ctx = make_context({5, 5}, {5, 6});
    ctx.train_channels = {{1, 2, 3, 4}};
    ctx.seasonal_period = 1;
    CHECK(compute_metric(MetricKind::Mase, ctx) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("metric oracle equivalence on randomized cases") {
    Rng rng(20240101);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t h = 1 + rng.next_u64() % 40;
        const std::size_t train_len = 10 + rng.next_u64() % 50;
        const int season = 1 + static_cast<int>(rng.next_u64() % 4);
        std::vector<double> f(h), y(h), train(train_len);
        for (auto& v : f) v = 5.0 * rng.next_gaussian() + 1.0;
        // keep actuals away from zero so mape/wape stay defined
        for (auto& v : y) {
            v = 5.0 * rng.next_gaussian() + 1.0;
            if (std::fabs(v) < 1e-3) v = 1e-3;
        }
        for (auto& v : train) v = 5.0 * rng.next_gaussian();

        MetricContext ctx = make_context(f, y);
        ctx.train_channels = {train};
        ctx.seasonal_period = season;

        const double tol = 1e-9;
        auto close = [tol](double a, double b) {
            return std::fabs(a - b) <= tol * std::max({1.0, std::fabs(a), std::fabs(b)});
        };
        CHECK(close(compute_metric(MetricKind::Mae, ctx), oracle::mae(f, y)));
        CHECK(close(compute_metric(MetricKind::Mape, ctx), oracle::mape(f, y)));
        CHECK(close(compute_metric(MetricKind::Mse, ctx), oracle::mse(f, y)));
        CHECK(close(compute_metric(MetricKind::Smape, ctx), oracle::smape(f, y)));
        CHECK(close(compute_metric(MetricKind::Rmse, ctx), oracle::rmse(f, y)));
        CHECK(close(compute_metric(MetricKind::Wape, ctx), oracle::wape(f, y)));
        CHECK(close(compute_metric(MetricKind::Msmape, ctx), oracle::msmape(f, y)));
        CHECK(close(compute_metric(MetricKind::Mase, ctx),
                    oracle::mase(f, y, train, season)));
    }
}

TEST_CASE("scale behaviour") {
    Rng rng(99);
    std::vector<double> f(16), y(16), train(30);
    for (auto& v : f) v = rng.next_gaussian() + 3.0;
    for (auto& v : y) v = rng.next_gaussian() + 3.0;
    for (auto& v : train) v = rng.next_gaussian() + 3.0;

    MetricContext base = make_context(f, y);
    base.train_channels = {train};
    base.seasonal_period = 1;

    const double a = 3.7;
    MetricContext scaled = base;
    for (auto& v : scaled.forecasts) v *= a;
    for (auto& v : scaled.actuals) v *= a;
    for (auto& v : scaled.train_channels[0]) v *= a;

    CHECK(compute_metric(MetricKind::Mae, scaled) ==
          doctest::Approx(a * compute_metric(MetricKind::Mae, base)).epsilon(1e-12));
    CHECK(compute_metric(MetricKind::Rmse, scaled) ==
          doctest::Approx(a * compute_metric(MetricKind::Rmse, base)).epsilon(1e-12));
    for (MetricKind kind : {MetricKind::Mape, MetricKind::Smape, MetricKind::Wape,
                            MetricKind::Mase}) {
        CHECK(compute_metric(kind, scaled) ==
              doctest::Approx(compute_metric(kind, base)).epsilon(1e-12));
    }
}

TEST_CASE("rmse squared equals mse") {
    Rng rng(123);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> f(8), y(8);
        for (auto& v : f) v = rng.next_gaussian();
        for (auto& v : y) v = rng.next_gaussian();
        MetricContext ctx = make_context(f, y);
        const double rmse = compute_metric(MetricKind::Rmse, ctx);
        const double mse = compute_metric(MetricKind::Mse, ctx);
        CHECK(rmse * rmse == doctest::Approx(mse).epsilon(1e-12));
        CHECK(compute_metric(MetricKind::Mae, ctx) >= 0.0);
        CHECK(mse >= 0.0);
    }
}

TEST_CASE("division by zero is an error, not a NaN") {
    MetricContext mape_ctx = make_context({1.0}, {0.0});
    try {
        compute_metric(MetricKind::Mape, mape_ctx);
        FAIL("expected DivisionByZero");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::DivisionByZero);
        CHECK(std::string(e.what()).find("mape") != std::string::npos);
    }

    MetricContext wape_ctx = make_context({1.0, 2.0}, {0.0, 0.0});
    CHECK_THROWS_AS(compute_metric(MetricKind::Wape, wape_ctx), Error);

    MetricContext smape_ctx = make_context({0.0}, {0.0});
    CHECK_THROWS_AS(compute_metric(MetricKind::Smape, smape_ctx), Error);

    MetricContext mase_ctx = make_context({1.0}, {2.0});
    mase_ctx.train_channels = {{3.0, 3.0, 3.0, 3.0}};
    mase_ctx.seasonal_period = 1;
    CHECK_THROWS_AS(compute_metric(MetricKind::Mase, mase_ctx), Error);
}

TEST_CASE("mase without a train series") {
    MetricContext ctx = make_context({1.0}, {2.0});
    try {
        compute_metric(MetricKind::Mase, ctx);
        FAIL("expected MissingTrainSeries");
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::MissingTrainSeries);
    }
}

TEST_CASE("multivariate metrics flatten the error set") {
    // two channels, horizon 2, layout row-major (time x channel)
    MetricContext ctx;
    ctx.channel_count = 2;
    ctx.forecasts = {1.0, 10.0, 2.0, 20.0};
    ctx.actuals = {2.0, 12.0, 2.0, 24.0};
    CHECK(compute_metric(MetricKind::Mae, ctx) ==
          doctest::Approx((1.0 + 2.0 + 0.0 + 4.0) / 4.0));

    ctx.train_channels = {{1, 2, 3, 4}, {10, 20, 30, 40}};
    ctx.seasonal_period = 1;
    // per-channel mase averaged: ch0 errors (1,0), denominator (2/3)*3=2 -> 0.5
    //                            ch1 errors (2,4), denominator (2/3)*30=20 -> 0.3
    CHECK(compute_metric(MetricKind::Mase, ctx) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("average_over_windows") {
    CHECK(average_over_windows(std::vector<double>{1.0}) == 1.0);
    CHECK(average_over_windows(std::vector<double>{1.0, 2.0, 3.0}) == 2.0);
    CHECK_THROWS_AS(average_over_windows(std::vector<double>{}), Error);
    CHECK_THROWS_AS(average_over_windows(std::vector<double>{
                        1.0, std::numeric_limits<double>::infinity()}),
                    Error);
}

TEST_CASE("metric token round trip") {
    for (MetricKind kind : kAllMetrics) {
        CHECK(parse_metric_name(metric_name(kind)) == kind);
    }
    CHECK_THROWS_AS(parse_metric_name("mape2"), Error);
}
