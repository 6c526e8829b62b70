#pragma once

#include "tsbench/characterize/characteristics.hpp"
#include "tsbench/core/error.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tsbench {

/// One (dataset, method, horizon, metric) outcome with its audit trail.
struct ResultRecord {
    std::string dataset;
    std::string method;
    std::size_t horizon = 0;
    std::string strategy;
    std::string metric;
    bool failed = false;
    double value = 0.0;
    std::string failure_reason;
    std::size_t windows = 0;
    std::size_t failures = 0;
    double seconds = 0.0;
    std::string fingerprint;
    std::string version;
};

/// Canonical row order: (dataset, method, horizon, metric).
void sort_records(std::vector<ResultRecord>& records);

enum class ExportFormat { Csv, StructuredText };

/// Canonical export. CSV header:
/// dataset,method,horizon,strategy,metric,value,windows,failures,seconds,fingerprint,version
/// Failed cells carry "failed" in the value column; the structured-text
/// format adds a reason column. Byte-identical for identical records.
void export_results(const std::vector<ResultRecord>& records, ExportFormat format,
                    const std::string& path);
void write_results_csv(const std::vector<ResultRecord>& records, std::ostream& out);
std::vector<ResultRecord> read_results_csv(const std::string& path);

struct RankEntry {
    std::string method;
    std::size_t best_count = 0;
};

struct RankTable {
    std::vector<RankEntry> entries; // sorted by count desc, then name
    std::size_t cells = 0;          // number of comparison cells
};

/// Counts, per method, how many cells it achieves the best value on.
/// Cells default to (dataset, horizon); with `average_horizons` the values
/// are averaged per dataset first. Ties within a relative tolerance of 1e-9
/// credit every tied method. Errors: EmptyRecords.
RankTable aggregate_ranks(const std::vector<ResultRecord>& records,
                          const std::string& metric, bool lower_is_better = true,
                          bool average_horizons = false);

/// Per-series characterization export row (scores, flags, feature vector).
struct ProfileRow {
    std::string series;
    CharacteristicProfile profile;
    CharacteristicFlags flags;
    FeatureVector features;
};

void write_profiles_csv(const std::vector<ProfileRow>& rows, std::ostream& out);
std::vector<ProfileRow> read_profiles_csv(const std::string& path);

enum class PlotKind { CharacteristicRadar, RankBar, MetricVsHorizon };

PlotKind parse_plot_kind(const std::string& token);

/// Emits plain tabular data for external plotting; no rendering happens.
/// Errors: InsufficientPlotData.
void emit_plot_data_profiles(const std::vector<ProfileRow>& rows,
                             const std::string& path);
void emit_plot_data_ranks(const std::vector<ResultRecord>& records,
                          const std::string& metric, const std::string& path);
void emit_plot_data_horizon(const std::vector<ResultRecord>& records,
                            const std::string& metric, const std::string& path);

} // namespace tsbench
