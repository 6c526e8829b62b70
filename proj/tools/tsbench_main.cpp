#include "tsbench/characterize/characteristics.hpp"
#include "tsbench/io/config.hpp"
#include "tsbench/io/dataset_io.hpp"
#include "tsbench/io/format.hpp"
#include "tsbench/report/report.hpp"
#include "tsbench/report/runner.hpp"
#include "tsbench/version.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

namespace fs = std::filesystem;
using namespace tsbench;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitPartialFailures = 2;
constexpr int kExitIo = 3;

int exit_code_for(const Error& error) {
    return error.code() == ErrorCode::IoError ? kExitIo : kExitValidation;
}

int cmd_characterize(const std::string& csv_path, bool per_channel,
                     const std::string& output, const std::string& frequency,
                     int seasonal_period) {
    DatasetManifest manifest;
    manifest.path = csv_path;
    if (!frequency.empty()) manifest.frequency = parse_frequency_label(frequency);
    if (seasonal_period > 0) manifest.seasonal_period = seasonal_period;
    const Dataset dataset = load_dataset(manifest);

    std::optional<double> correlation;
    if (dataset.channel_count() >= 2) {
        try {
            correlation = correlation_score(dataset);
        } catch (const Error& e) {
            std::cerr << "warning: correlation unavailable: " << e.what() << "\n";
        }
    }

    std::vector<ProfileRow> rows;
    std::vector<std::string> errors;
    if (per_channel || dataset.channel_count() == 1) {
        for (std::size_t c = 0; c < dataset.channel_count(); ++c) {
            const std::string label = c < dataset.channel_names.size()
                                          ? dataset.channel_names[c]
                                          : "ch" + std::to_string(c);
            try {
                ProfileRow row;
                row.series = dataset.name + ":" + label;
                row.profile = profile_series(dataset.channels[c]);
                row.profile.correlation = correlation;
                row.features = feature_vector(dataset.channels[c].values);
                rows.push_back(std::move(row));
            } catch (const Error& e) {
                errors.push_back(label + ": " + e.what());
            }
        }
    } else {
        ProfileRow row;
        row.series = dataset.name;
        row.profile = profile_dataset(dataset);
        row.features = feature_vector(dataset.channels.front().values);
        rows.push_back(std::move(row));
    }
    if (rows.empty()) {
        for (const auto& e : errors) std::cerr << "error: " << e << "\n";
        return kExitValidation;
    }

    // median-split thresholds over the scored collection
    std::vector<CharacteristicProfile> profiles;
    for (const auto& row : rows) profiles.push_back(row.profile);
    const ClassificationThresholds thresholds =
        rows.size() > 1 ? thresholds_from_collection(profiles)
                        : ClassificationThresholds{};
    for (auto& row : rows) {
        row.flags = classify_characteristics(row.profile, thresholds);
    }

    std::cout << "series,trend,seasonality,stationary,adf_pvalue,shifting,transition,"
                 "correlation\n";
    for (const auto& row : rows) {
        const auto& p = row.profile;
        std::cout << row.series << "," << format_double(p.trend_strength) << ","
                  << format_double(p.seasonality_strength) << ","
                  << (p.stationary ? "true" : "false") << ","
                  << format_double(p.adf_pvalue) << "," << format_double(p.shifting)
                  << "," << format_double(p.transition) << ","
                  << (p.correlation ? format_double(*p.correlation) : "") << "\n";
    }
    for (const auto& e : errors) std::cerr << "warning: skipped channel " << e << "\n";

    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) {
            std::cerr << "error: cannot write " << output << "\n";
            return kExitIo;
        }
        write_profiles_csv(rows, out);
    }
    return errors.empty() ? kExitOk : kExitPartialFailures;
}

int cmd_run(const std::string& config_path, std::size_t parallel_override,
            std::uint64_t seed_override, bool seed_given,
            const std::string& output_dir_override, bool timings) {
    RunConfig config = parse_config(config_path);
    if (seed_given) {
        config.seed = seed_override;
        for (auto& method : config.methods) method.deterministic_seed = seed_override;
        config.refresh_fingerprint();
    }
    if (!output_dir_override.empty()) config.output_dir = output_dir_override;

    fs::create_directories(config.output_dir);
    std::ofstream log(fs::path(config.output_dir) / "run.log", std::ios::app);
    if (!log) {
        throw Error(ErrorCode::IoError, "cannot write log in " + config.output_dir);
    }

    RunOptions options;
    options.parallelism = parallel_override;
    options.include_timings = timings;
    options.log = [&log](const std::string& line) { log << line << "\n"; };

    const RunOutcome outcome = execute_run(config, options);

    const std::string results_path =
        (fs::path(config.output_dir) / "results.csv").string();
    export_results(outcome.records, ExportFormat::Csv, results_path);

    std::cout << "cells: " << outcome.cells_total
              << "  failed: " << outcome.cells_failed << "\n";
    std::cout << "results: " << results_path << "\n";
    return outcome.cells_failed == 0 ? kExitOk : kExitPartialFailures;
}

std::vector<ResultRecord> read_results_path(const std::string& path) {
    std::vector<ResultRecord> records;
    if (fs::is_directory(path)) {
        std::vector<std::string> files;
        for (const auto& entry : fs::directory_iterator(path)) {
            if (entry.path().extension() == ".csv") files.push_back(entry.path().string());
        }
        std::sort(files.begin(), files.end());
        for (const auto& file : files) {
            try {
                for (auto& record : read_results_csv(file)) {
                    records.push_back(std::move(record));
                }
            } catch (const Error& e) {
                if (e.code() != ErrorCode::ParseError) throw; // not a results file
            }
        }
        if (records.empty()) {
            throw Error(ErrorCode::EmptyRecords,
                        "no result CSVs found under " + path);
        }
    } else {
        records = read_results_csv(path);
    }
    return records;
}

int cmd_rank(const std::string& results_path, const std::string& metric,
             bool higher_is_better, bool per_dataset, const std::string& output) {
    const auto records = read_results_path(results_path);
    const RankTable table =
        aggregate_ranks(records, metric, !higher_is_better, per_dataset);
    std::cout << "method,best_count  (cells=" << table.cells << ")\n";
    for (const auto& entry : table.entries) {
        std::cout << entry.method << "," << entry.best_count << "\n";
    }
    if (!output.empty()) {
        std::ofstream out(output);
        if (!out) throw Error(ErrorCode::IoError, "cannot write " + output);
        out << "method,best_count\n";
        for (const auto& entry : table.entries) {
            out << entry.method << "," << entry.best_count << "\n";
        }
    }
    return kExitOk;
}

int cmd_export(const std::string& results_path, const std::string& format,
               const std::string& output) {
    const auto records = read_results_path(results_path);
    ExportFormat fmt;
    if (format == "csv") {
        fmt = ExportFormat::Csv;
    } else if (format == "table") {
        fmt = ExportFormat::StructuredText;
    } else {
        throw Error(ErrorCode::SchemaError, "format must be 'csv' or 'table'");
    }
    export_results(records, fmt, output);
    std::cout << "wrote " << output << "\n";
    return kExitOk;
}

int cmd_plot_data(const std::string& kind_token, const std::string& input,
                  const std::string& metric, const std::string& output) {
    const PlotKind kind = parse_plot_kind(kind_token);
    if (kind == PlotKind::CharacteristicRadar) {
        emit_plot_data_profiles(read_profiles_csv(input), output);
    } else if (kind == PlotKind::RankBar) {
        if (metric.empty()) {
            throw Error(ErrorCode::SchemaError, "rank-bar needs --metric");
        }
        emit_plot_data_ranks(read_results_path(input), metric, output);
    } else {
        if (metric.empty()) {
            throw Error(ErrorCode::SchemaError, "metric-vs-horizon needs --metric");
        }
        emit_plot_data_horizon(read_results_path(input), metric, output);
    }
    std::cout << "wrote " << output << "\n";
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"tsbench: a fair time-series forecasting evaluation harness"};
    app.set_version_flag("--version", std::string("tsbench ") + kVersion);
    app.require_subcommand(1);

    // characterize
    auto* characterize = app.add_subcommand(
        "characterize", "Score a dataset along the six characteristics");
    std::string ch_path, ch_output, ch_frequency;
    int ch_period = 0;
    bool ch_per_channel = false;
    characterize->add_option("dataset", ch_path, "wide CSV dataset")->required();
    characterize->add_flag("--per-channel", ch_per_channel,
                           "one profile row per channel");
    characterize->add_option("--output", ch_output, "write full profile CSV here");
    characterize->add_option("--frequency", ch_frequency,
                             "yearly|quarterly|monthly|weekly|daily|hourly|other");
    characterize->add_option("--seasonal-period", ch_period, "points per cycle");

    // run
    auto* run = app.add_subcommand("run", "Execute a configured evaluation");
    std::string run_config, run_output_dir;
    std::size_t run_parallel = 0;
    std::uint64_t run_seed = 0;
    bool run_timings = false;
    run->add_option("--config", run_config, "JSON run configuration")->required();
    run->add_option("--parallel", run_parallel, "worker threads (default: config)");
    auto* seed_opt = run->add_option("--seed", run_seed, "override the config seed");
    run->add_option("--output-dir", run_output_dir, "override the output directory");
    run->add_flag("--timings", run_timings,
                  "export measured wall-clock seconds (breaks byte-identical reruns)");

    // rank
    auto* rank = app.add_subcommand("rank", "Count best-method cells per metric");
    std::string rank_results, rank_metric, rank_output;
    bool rank_higher = false, rank_per_dataset = false;
    rank->add_option("--results", rank_results, "results CSV or directory")->required();
    rank->add_option("--metric", rank_metric, "metric token")->required();
    rank->add_flag("--higher-is-better", rank_higher, "maximize instead of minimize");
    rank->add_flag("--per-dataset", rank_per_dataset, "average horizons per dataset");
    rank->add_option("--output", rank_output, "also write the table as CSV");

    // export
    auto* exp = app.add_subcommand("export", "Re-export results canonically");
    std::string exp_results, exp_format = "csv", exp_output;
    exp->add_option("--results", exp_results, "results CSV or directory")->required();
    exp->add_option("--format", exp_format, "csv|table");
    exp->add_option("--output", exp_output, "output file")->required();

    // plot-data
    auto* plot = app.add_subcommand("plot-data", "Emit plain tables for plotting");
    std::string plot_kind, plot_input, plot_metric, plot_output;
    plot->add_option("--kind", plot_kind,
                     "characteristic-radar|rank-bar|metric-vs-horizon")
        ->required();
    plot->add_option("--input", plot_input, "profiles or results CSV")->required();
    plot->add_option("--metric", plot_metric, "metric token (rank/horizon kinds)");
    plot->add_option("--output", plot_output, "output file")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (characterize->parsed()) {
            return cmd_characterize(ch_path, ch_per_channel, ch_output, ch_frequency,
                                    ch_period);
        }
        if (run->parsed()) {
            return cmd_run(run_config, run_parallel, run_seed, seed_opt->count() > 0,
                           run_output_dir, run_timings);
        }
        if (rank->parsed()) {
            return cmd_rank(rank_results, rank_metric, rank_higher, rank_per_dataset,
                            rank_output);
        }
        if (exp->parsed()) {
            return cmd_export(exp_results, exp_format, exp_output);
        }
        if (plot->parsed()) {
            return cmd_plot_data(plot_kind, plot_input, plot_metric, plot_output);
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
