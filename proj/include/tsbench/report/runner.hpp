#pragma once

#include "tsbench/io/config.hpp"
#include "tsbench/report/report.hpp"

#include <functional>
#include <string>
#include <vector>

namespace tsbench {

struct RunOptions {
    std::size_t parallelism = 0; // 0 = take from config
    bool include_timings = false; // measured seconds break byte-identity
    std::function<void(const std::string&)> log; // optional line sink
};

struct RunOutcome {
    std::vector<ResultRecord> records;
    std::size_t cells_total = 0;
    std::size_t cells_failed = 0; // cells with at least one failed metric
};

/// Executes every (dataset x method x horizon) cell of the config. Cells are
/// independent work units; workers pull them from a shared queue and the
/// record list is sorted canonically afterwards, so the output is identical
/// for any parallelism degree. Per-cell wall-clock goes to the log; the
/// exported seconds column stays 0 unless `include_timings` is set.
RunOutcome execute_run(const RunConfig& config, const RunOptions& options = {});

} // namespace tsbench
