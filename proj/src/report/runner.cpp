#include "tsbench/report/runner.hpp"

#include "tsbench/version.hpp"

#include <atomic>
#include <chrono>
#include <mutex>
#include <sstream>
#include <thread>

namespace tsbench {

namespace {

struct Cell {
    std::size_t dataset_index = 0;
    std::size_t method_index = 0;
    std::size_t horizon = 0;
};

std::string method_label(const MethodSpec& spec) {
    if (spec.hyperparameters.empty()) return spec.name;
    std::ostringstream label;
    label << spec.name << "(";
    bool first = true;
    for (const auto& [key, value] : spec.hyperparameters) {
        if (!first) label << ";";
        label << key << "=" << value;
        first = false;
    }
    label << ")";
    return label.str();
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

} // namespace

RunOutcome execute_run(const RunConfig& config, const RunOptions& options) {
    std::vector<Cell> cells;
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        for (std::size_t m = 0; m < config.methods.size(); ++m) {
            for (std::size_t horizon : config.horizons[d]) {
                cells.push_back({d, m, horizon});
            }
        }
    }

    RunOutcome outcome;
    outcome.cells_total = cells.size();

    std::mutex sink_mutex; // single mutation point for records and the log
    std::atomic<std::size_t> next_cell{0};
    std::atomic<std::size_t> failed_cells{0};

    auto log_line = [&](const std::string& line) {
        if (options.log) options.log(timestamp_now() + " " + line);
    };

    auto worker = [&]() {
        while (true) {
            const std::size_t index = next_cell.fetch_add(1);
            if (index >= cells.size()) break;
            const Cell& cell = cells[index];
            const Dataset& dataset = config.datasets[cell.dataset_index];
            const MethodSpec& method = config.methods[cell.method_index];

            EvaluationPlan plan;
            plan.dataset = &dataset;
            plan.method = method;
            plan.strategy = config.strategy;
            plan.horizon = cell.horizon;
            plan.lookback = config.lookback;
            plan.stride = config.stride;
            plan.metrics = config.metrics;
            plan.normalization = config.normalization;
            plan.raw_scale_metrics = config.raw_scale_metrics;
            plan.batch_size = config.batch_size;

            const std::string label = method_label(method);
            const std::string cell_id = dataset.name + "/" + label + "/F=" +
                                        std::to_string(cell.horizon);

            const auto started = std::chrono::steady_clock::now();
            CellResult result;
            std::string hard_failure;
            try {
                result = run_plan(plan);
            } catch (const Error& e) {
                hard_failure = e.what();
            }
            const double elapsed =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
                    .count();

            std::vector<ResultRecord> records;
            bool any_failed = false;
            for (std::size_t i = 0; i < config.metrics.size(); ++i) {
                ResultRecord record;
                record.dataset = dataset.name;
                record.method = label;
                record.horizon = cell.horizon;
                record.strategy = strategy_name(config.strategy);
                record.metric = metric_name(config.metrics[i]);
                record.windows = result.windows_total;
                record.failures = result.windows_failed;
                record.seconds = options.include_timings ? elapsed : 0.0;
                record.fingerprint = config.fingerprint;
                record.version = kVersion;
                if (!hard_failure.empty()) {
                    record.failed = true;
                    record.failure_reason = hard_failure;
                } else {
                    const MetricOutcome& metric = result.metrics[i];
                    record.failed = metric.failed;
                    record.value = metric.value;
                    record.failure_reason = metric.failure_reason;
                }
                any_failed = any_failed || record.failed;
                records.push_back(std::move(record));
            }
            if (any_failed) failed_cells.fetch_add(1);

            {
                std::lock_guard<std::mutex> lock(sink_mutex);
                for (auto& record : records) outcome.records.push_back(std::move(record));
                std::ostringstream line;
                line << "cell " << cell_id << " windows=" << result.windows_total
                     << " failed_windows=" << result.windows_failed << " seconds="
                     << elapsed;
                if (!hard_failure.empty()) line << " error=\"" << hard_failure << "\"";
                log_line(line.str());
            }
        }
    };

    const std::size_t requested =
        options.parallelism > 0 ? options.parallelism : config.parallelism;
    const std::size_t threads = std::max<std::size_t>(1, requested);
    log_line("run start cells=" + std::to_string(cells.size()) +
             " parallelism=" + std::to_string(threads) + " seed=" +
             std::to_string(config.seed) + " fingerprint=" + config.fingerprint);

    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    // canonical order regardless of completion order
    sort_records(outcome.records);
    outcome.cells_failed = failed_cells.load();
    log_line("run end failed_cells=" + std::to_string(outcome.cells_failed));
    return outcome;
}

} // namespace tsbench
