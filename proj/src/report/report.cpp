#include "tsbench/report/report.hpp"

#include "tsbench/io/format.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

namespace tsbench {

void sort_records(std::vector<ResultRecord>& records) {
    std::sort(records.begin(), records.end(),
              [](const ResultRecord& a, const ResultRecord& b) {
                  return std::tie(a.dataset, a.method, a.horizon, a.metric) <
                         std::tie(b.dataset, b.method, b.horizon, b.metric);
              });
}

namespace {

const char* kResultHeader =
    "dataset,method,horizon,strategy,metric,value,windows,failures,seconds,"
    "fingerprint,version";

std::vector<std::string> split_line(const std::string& line, char sep) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, sep)) cells.push_back(cell);
    if (!line.empty() && line.back() == sep) cells.emplace_back();
    return cells;
}

} // namespace

void write_results_csv(const std::vector<ResultRecord>& records, std::ostream& out) {
    out << kResultHeader << "\n";
    for (const auto& r : records) {
        out << r.dataset << "," << r.method << "," << r.horizon << "," << r.strategy
            << "," << r.metric << "," << (r.failed ? "failed" : format_double(r.value))
            << "," << r.windows << "," << r.failures << "," << format_double(r.seconds)
            << "," << r.fingerprint << "," << r.version << "\n";
    }
}

void export_results(const std::vector<ResultRecord>& records, ExportFormat format,
                    const std::string& path) {
    if (records.empty()) {
        throw Error(ErrorCode::EmptyRecords, "no records to export");
    }
    std::vector<ResultRecord> sorted = records;
    sort_records(sorted);

    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path);
    }
    if (format == ExportFormat::Csv) {
        write_results_csv(sorted, out);
    } else {
        out << std::left << std::setw(16) << "dataset" << std::setw(24) << "method"
            << std::setw(9) << "horizon" << std::setw(9) << "strategy" << std::setw(8)
            << "metric" << std::setw(22) << "value" << std::setw(9) << "windows"
            << std::setw(9) << "failures" << "reason" << "\n";
        for (const auto& r : sorted) {
            out << std::left << std::setw(16) << r.dataset << std::setw(24) << r.method
                << std::setw(9) << r.horizon << std::setw(9) << r.strategy
                << std::setw(8) << r.metric << std::setw(22)
                << (r.failed ? "failed" : format_double(r.value)) << std::setw(9)
                << r.windows << std::setw(9) << r.failures
                << (r.failed ? r.failure_reason : "") << "\n";
        }
    }
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing " + path);
    }
}

std::vector<ResultRecord> read_results_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open results file " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, path + ": empty results file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line != kResultHeader) {
        throw Error(ErrorCode::ParseError, path + ": unexpected results header");
    }
    std::vector<ResultRecord> records;
    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_line(line, ',');
        if (cells.size() != 11) {
            throw Error(ErrorCode::ParseError,
                        path + ": row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected 11");
        }
        ResultRecord r;
        r.dataset = cells[0];
        r.method = cells[1];
        r.horizon = static_cast<std::size_t>(std::stoull(cells[2]));
        r.strategy = cells[3];
        r.metric = cells[4];
        if (cells[5] == "failed") {
            r.failed = true;
        } else {
            r.value = std::stod(cells[5]);
        }
        r.windows = static_cast<std::size_t>(std::stoull(cells[6]));
        r.failures = static_cast<std::size_t>(std::stoull(cells[7]));
        r.seconds = std::stod(cells[8]);
        r.fingerprint = cells[9];
        r.version = cells[10];
        records.push_back(std::move(r));
    }
    return records;
}

RankTable aggregate_ranks(const std::vector<ResultRecord>& records,
                          const std::string& metric, bool lower_is_better,
                          bool average_horizons) {
    // cell key -> (method -> value)
    std::map<std::string, std::map<std::string, std::vector<double>>> cells;
    std::map<std::string, std::size_t> method_counts;
    for (const auto& r : records) {
        if (r.metric != metric) continue;
        method_counts.emplace(r.method, 0);
        if (r.failed) continue;
        const std::string key = average_horizons
                                    ? r.dataset
                                    : r.dataset + "\x1f" + std::to_string(r.horizon);
        cells[key][r.method].push_back(r.value);
    }
    if (cells.empty()) {
        throw Error(ErrorCode::EmptyRecords,
                    "no usable records for metric '" + metric + "'");
    }

    for (const auto& [key, methods] : cells) {
        double best = lower_is_better ? std::numeric_limits<double>::infinity()
                                      : -std::numeric_limits<double>::infinity();
        std::map<std::string, double> value_of;
        for (const auto& [method, values] : methods) {
            double v = 0.0;
            for (double x : values) v += x;
            v /= static_cast<double>(values.size());
            value_of[method] = v;
            best = lower_is_better ? std::min(best, v) : std::max(best, v);
        }
        const double tolerance = 1e-9 * std::max(1.0, std::fabs(best));
        for (const auto& [method, v] : value_of) {
            if (std::fabs(v - best) <= tolerance) {
                ++method_counts[method];
            }
        }
    }

    RankTable table;
    table.cells = cells.size();
    for (const auto& [method, count] : method_counts) {
        table.entries.push_back({method, count});
    }
    std::sort(table.entries.begin(), table.entries.end(),
              [](const RankEntry& a, const RankEntry& b) {
                  if (a.best_count != b.best_count) return a.best_count > b.best_count;
                  return a.method < b.method;
              });
    return table;
}

// ------------------------------------------------------------- profiles ----

void write_profiles_csv(const std::vector<ProfileRow>& rows, std::ostream& out) {
    out << "series,trend_strength,seasonality_strength,stationary,adf_pvalue,shifting,"
           "transition,correlation,flag_seasonality,flag_trend,flag_shifting,"
           "flag_transition,flag_stationarity";
    for (const auto& name : feature_names()) out << "," << name;
    out << "\n";
    for (const auto& row : rows) {
        const auto& p = row.profile;
        out << row.series << "," << format_double(p.trend_strength) << ","
            << format_double(p.seasonality_strength) << "," << (p.stationary ? 1 : 0)
            << "," << format_double(p.adf_pvalue) << "," << format_double(p.shifting)
            << "," << format_double(p.transition) << ","
            << (p.correlation ? format_double(*p.correlation) : "") << ","
            << (row.flags.seasonality ? 1 : 0) << "," << (row.flags.trend ? 1 : 0) << ","
            << (row.flags.shifting ? 1 : 0) << "," << (row.flags.transition ? 1 : 0)
            << "," << (row.flags.stationarity ? 1 : 0);
        for (double f : row.features.features) out << "," << format_double(f);
        out << "\n";
    }
}

std::vector<ProfileRow> read_profiles_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open profiles file " + path);
    }
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, path + ": empty profiles file");
    }
    std::vector<ProfileRow> rows;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        const auto cells = split_line(line, ',');
        if (cells.size() != 13 + kFeatureCount) {
            throw Error(ErrorCode::ParseError, path + ": malformed profile row");
        }
        ProfileRow row;
        row.series = cells[0];
        row.profile.trend_strength = std::stod(cells[1]);
        row.profile.seasonality_strength = std::stod(cells[2]);
        row.profile.stationary = cells[3] == "1";
        row.profile.adf_pvalue = std::stod(cells[4]);
        row.profile.shifting = std::stod(cells[5]);
        row.profile.transition = std::stod(cells[6]);
        if (!cells[7].empty()) row.profile.correlation = std::stod(cells[7]);
        row.flags.seasonality = cells[8] == "1";
        row.flags.trend = cells[9] == "1";
        row.flags.shifting = cells[10] == "1";
        row.flags.transition = cells[11] == "1";
        row.flags.stationarity = cells[12] == "1";
        for (std::size_t f = 0; f < kFeatureCount; ++f) {
            row.features.features[f] = std::stod(cells[13 + f]);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

PlotKind parse_plot_kind(const std::string& token) {
    if (token == "characteristic-radar") return PlotKind::CharacteristicRadar;
    if (token == "rank-bar") return PlotKind::RankBar;
    if (token == "metric-vs-horizon") return PlotKind::MetricVsHorizon;
    throw Error(ErrorCode::SchemaError, "unknown plot kind '" + token + "'");
}

void emit_plot_data_profiles(const std::vector<ProfileRow>& rows,
                             const std::string& path) {
    if (rows.empty()) {
        throw Error(ErrorCode::InsufficientPlotData, "no profiles to plot");
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << "series,axis,value\n";
    for (const auto& row : rows) {
        const auto& p = row.profile;
        out << row.series << ",trend," << format_double(p.trend_strength) << "\n";
        out << row.series << ",seasonality," << format_double(p.seasonality_strength)
            << "\n";
        out << row.series << ",stationarity," << (p.stationary ? 1 : 0) << "\n";
        out << row.series << ",shifting," << format_double(p.shifting) << "\n";
        out << row.series << ",transition," << format_double(p.transition) << "\n";
        out << row.series << ",correlation,"
            << (p.correlation ? format_double(*p.correlation) : "") << "\n";
    }
}

void emit_plot_data_ranks(const std::vector<ResultRecord>& records,
                          const std::string& metric, const std::string& path) {
    if (records.empty()) {
        throw Error(ErrorCode::InsufficientPlotData, "no records to plot");
    }
    const RankTable table = aggregate_ranks(records, metric);
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << "method,best_count\n";
    for (const auto& entry : table.entries) {
        out << entry.method << "," << entry.best_count << "\n";
    }
}

void emit_plot_data_horizon(const std::vector<ResultRecord>& records,
                            const std::string& metric, const std::string& path) {
    if (records.empty()) {
        throw Error(ErrorCode::InsufficientPlotData, "no records to plot");
    }
    // mean value per (method, horizon) across datasets
    std::map<std::pair<std::string, std::size_t>, std::vector<double>> groups;
    for (const auto& r : records) {
        if (r.metric != metric || r.failed) continue;
        groups[{r.method, r.horizon}].push_back(r.value);
    }
    if (groups.empty()) {
        throw Error(ErrorCode::InsufficientPlotData,
                    "no usable records for metric '" + metric + "'");
    }
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::IoError, "cannot write " + path);
    out << "method,horizon,value\n";
    for (const auto& [key, values] : groups) {
        double sum = 0.0;
        for (double v : values) sum += v;
        out << key.first << "," << key.second << ","
            << format_double(sum / static_cast<double>(values.size())) << "\n";
    }
}

} // namespace tsbench
