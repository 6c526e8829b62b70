#include "tsbench/io/dataset_io.hpp"

#include "tsbench/io/format.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace tsbench {

namespace fs = std::filesystem;

std::string format_double(double value) {
    char buffer[40];
    auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

FillPolicy parse_fill_policy(const std::string& token) {
    if (token == "reject") return FillPolicy::Reject;
    if (token == "forward_fill") return FillPolicy::ForwardFill;
    if (token == "linear_interpolate") return FillPolicy::LinearInterpolate;
    throw Error(ErrorCode::SchemaError, "unknown fill policy '" + token + "'");
}

const char* fill_policy_name(FillPolicy policy) {
    switch (policy) {
        case FillPolicy::Reject: return "reject";
        case FillPolicy::ForwardFill: return "forward_fill";
        case FillPolicy::LinearInterpolate: return "linear_interpolate";
    }
    return "reject";
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::stringstream ss(line);
    while (std::getline(ss, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

bool is_missing_token(std::string token) {
    std::transform(token.begin(), token.end(), token.begin(),
                   [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
    return token.empty() || token == "nan" || token == "na" || token == "null";
}

// days since 1970-01-01 for a proleptic Gregorian date
std::int64_t days_from_civil(int year, int month, int day) {
    year -= month <= 2;
    const int era = (year >= 0 ? year : year - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(year - era * 400);
    const unsigned doy =
        (153u * static_cast<unsigned>(month + (month > 2 ? -3 : 9)) + 2u) / 5u +
        static_cast<unsigned>(day) - 1u;
    const unsigned doe = yoe * 365u + yoe / 4u - yoe / 100u + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) -
           719468;
}

// Accepts "YYYY-MM-DD", "YYYY-MM-DD HH:MM[:SS]" (or 'T'), "YYYY/MM/DD"
// variants, or a plain integer. Returns an ordinal that preserves order.
std::optional<std::int64_t> parse_timestamp(const std::string& token) {
    if (token.empty()) return std::nullopt;
    {
        std::int64_t value = 0;
        auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (ec == std::errc() && ptr == token.data() + token.size()) return value;
    }
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    char sep1 = 0, sep2 = 0;
    std::istringstream ss(token);
    ss >> year >> sep1 >> month >> sep2 >> day;
    if (ss.fail() || (sep1 != '-' && sep1 != '/') || sep2 != sep1 || month < 1 ||
        month > 12 || day < 1 || day > 31) {
        return std::nullopt;
    }
    std::int64_t ordinal = days_from_civil(year, month, day) * 86400;
    char next = 0;
    if (ss.get(next)) {
        if (next != ' ' && next != 'T') return std::nullopt;
        char colon = 0;
        ss >> hour >> colon >> minute;
        if (ss.fail() || colon != ':' || hour < 0 || hour > 23 || minute < 0 ||
            minute > 59) {
            return std::nullopt;
        }
        if (ss.get(colon)) {
            if (colon != ':') return std::nullopt;
            ss >> second;
            if (ss.fail() || second < 0 || second > 60) return std::nullopt;
        }
        ordinal += hour * 3600 + minute * 60 + second;
    }
    return ordinal;
}

[[noreturn]] void parse_fail(const std::string& path, std::size_t row, std::size_t col,
                             const std::string& what) {
    throw Error(ErrorCode::ParseError, path + ":" + std::to_string(row) + ":" +
                                           std::to_string(col) + ": " + what);
}

void fill_channel(std::vector<double>& values, std::vector<bool>& missing,
                  FillPolicy policy, const std::string& path,
                  const std::string& column, std::size_t* filled) {
    const std::size_t n = values.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (!missing[i]) continue;
        if (policy == FillPolicy::Reject) {
            throw Error(ErrorCode::MissingValues,
                        path + ": missing value at data row " + std::to_string(i + 1) +
                            ", column '" + column + "'");
        }
        ++*filled;
        if (policy == FillPolicy::ForwardFill) {
            std::size_t j = i;
            while (j > 0 && missing[j - 1]) --j;
            if (j == 0) {
                // leading gap: backfill from the first observed value
                std::size_t k = i;
                while (k < n && missing[k]) ++k;
                if (k == n) {
                    throw Error(ErrorCode::MissingValues,
                                path + ": column '" + column + "' has no values");
                }
                values[i] = values[k];
            } else {
                values[i] = values[j - 1];
            }
        } else { // linear interpolation, clamped at the edges
            std::size_t prev = i;
            while (prev > 0 && missing[prev - 1]) --prev;
            std::size_t next = i;
            while (next < n && missing[next]) ++next;
            const bool has_prev = prev > 0;
            const bool has_next = next < n;
            if (!has_prev && !has_next) {
                throw Error(ErrorCode::MissingValues,
                            path + ": column '" + column + "' has no values");
            }
            if (!has_prev) {
                values[i] = values[next];
            } else if (!has_next) {
                values[i] = values[prev - 1];
            } else {
                const double left = values[prev - 1];
                const double right = values[next];
                const double span = static_cast<double>(next - (prev - 1));
                values[i] = left + (right - left) *
                                       static_cast<double>(i - (prev - 1)) / span;
            }
        }
        missing[i] = false;
    }
}

} // namespace

std::optional<std::string> sidecar_path_for(const std::string& csv_path) {
    fs::path p(csv_path);
    p.replace_extension(".meta");
    if (fs::exists(p)) return p.string();
    return std::nullopt;
}

std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open " + path);
    }
    std::vector<std::pair<std::string, std::string>> entries;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto colon = line.find(':');
        if (colon == std::string::npos) {
            throw Error(ErrorCode::ParseError, path + ": malformed line '" + line + "'");
        }
        std::string key = line.substr(0, colon);
        std::string value = line.substr(colon + 1);
        auto trim = [](std::string& s) {
            const auto begin = s.find_first_not_of(" \t");
            const auto end = s.find_last_not_of(" \t");
            s = begin == std::string::npos ? "" : s.substr(begin, end - begin + 1);
        };
        trim(key);
        trim(value);
        entries.emplace_back(std::move(key), std::move(value));
    }
    return entries;
}

Dataset load_dataset(const DatasetManifest& manifest, LoadInfo* info) {
    std::ifstream in(manifest.path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open dataset file " + manifest.path);
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::ParseError, manifest.path + ": empty file");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 2) {
        parse_fail(manifest.path, 1, 1, "expected a date column plus channel columns");
    }
    if (header.front() != "date") {
        parse_fail(manifest.path, 1, 1, "first column must be named 'date'");
    }
    const std::size_t n_columns = header.size() - 1;

    std::vector<std::string> date_labels;
    std::vector<std::int64_t> timestamps;
    std::vector<std::vector<double>> columns(n_columns);
    std::vector<std::vector<bool>> missing(n_columns);

    std::size_t row = 1;
    while (std::getline(in, line)) {
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> cells = split_csv_line(line);
        if (cells.size() != header.size()) {
            throw Error(ErrorCode::RaggedRows,
                        manifest.path + ": row " + std::to_string(row) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(header.size()));
        }
        const auto ts = parse_timestamp(cells.front());
        if (!ts) {
            parse_fail(manifest.path, row, 1, "unparseable date '" + cells.front() + "'");
        }
        if (!timestamps.empty() && *ts <= timestamps.back()) {
            parse_fail(manifest.path, row, 1,
                       "timestamp does not increase (duplicate or out of order)");
        }
        timestamps.push_back(*ts);
        date_labels.push_back(cells.front());
        for (std::size_t c = 0; c < n_columns; ++c) {
            const std::string& cell = cells[c + 1];
            if (is_missing_token(cell)) {
                columns[c].push_back(0.0);
                missing[c].push_back(true);
                continue;
            }
            char* end = nullptr;
            const double value = std::strtod(cell.c_str(), &end);
            if (end != cell.c_str() + cell.size()) {
                parse_fail(manifest.path, row, c + 2, "unparseable number '" + cell + "'");
            }
            if (!std::isfinite(value)) {
                columns[c].push_back(0.0);
                missing[c].push_back(true);
                continue;
            }
            columns[c].push_back(value);
            missing[c].push_back(false);
        }
    }
    if (timestamps.empty()) {
        throw Error(ErrorCode::ParseError, manifest.path + ": no data rows");
    }

    // manifest settings, overridable by the sidecar
    FrequencyLabel frequency = manifest.frequency.value_or(FrequencyLabel::Other);
    std::optional<int> period_override = manifest.seasonal_period;
    std::string domain = manifest.domain_tag;
    if (const auto sidecar = sidecar_path_for(manifest.path)) {
        for (const auto& [key, value] : read_key_value_file(*sidecar)) {
            if (key == "frequency" && !manifest.frequency) {
                frequency = parse_frequency_label(value);
            } else if (key == "seasonal_period" && !manifest.seasonal_period) {
                period_override = std::stoi(value);
            } else if (key == "domain" && domain.empty()) {
                domain = value;
            }
        }
    }

    const std::size_t length = timestamps.size();
    int period = period_override.value_or(default_seasonal_period(frequency));
    // weekly default 52 capped below the series length
    if (!period_override && period >= static_cast<int>(length)) {
        period = std::max(1, static_cast<int>(length) - 1);
    }
    if (period < 1) {
        throw Error(ErrorCode::SchemaError,
                    manifest.path + ": seasonal_period must be >= 1");
    }

    LoadInfo local_info;
    Dataset dataset;
    dataset.name = manifest.name.empty() ? fs::path(manifest.path).stem().string()
                                         : manifest.name;
    dataset.domain_tag = domain;
    dataset.split = manifest.split;
    dataset.date_labels = std::move(date_labels);

    std::vector<std::size_t> selected;
    if (manifest.channel_subset.empty()) {
        for (std::size_t c = 0; c < n_columns; ++c) selected.push_back(c);
    } else {
        for (const auto& want : manifest.channel_subset) {
            const auto it = std::find(header.begin() + 1, header.end(), want);
            if (it == header.end()) {
                throw Error(ErrorCode::SchemaError, manifest.path +
                                                        ": no channel named '" + want +
                                                        "'");
            }
            selected.push_back(static_cast<std::size_t>(it - header.begin() - 1));
        }
    }

    for (std::size_t c : selected) {
        fill_channel(columns[c], missing[c], manifest.fill_policy, manifest.path,
                     header[c + 1], &local_info.filled_cells);
        TimeSeries series = validate_series(std::move(columns[c]), timestamps, period,
                                            frequency);
        dataset.channels.push_back(std::move(series));
        dataset.channel_names.push_back(header[c + 1]);
    }
    dataset.validate();
    if (info) *info = local_info;
    return dataset;
}

void save_dataset(const Dataset& dataset, const std::string& path) {
    std::ofstream out(path);
    if (!out) {
        throw Error(ErrorCode::IoError, "cannot write " + path);
    }
    out << "date";
    for (std::size_t c = 0; c < dataset.channel_count(); ++c) {
        if (c < dataset.channel_names.size()) {
            out << "," << dataset.channel_names[c];
        } else {
            out << ",ch" << c;
        }
    }
    out << "\n";
    for (std::size_t t = 0; t < dataset.length(); ++t) {
        if (t < dataset.date_labels.size()) {
            out << dataset.date_labels[t];
        } else {
            out << t;
        }
        for (const auto& channel : dataset.channels) {
            out << "," << format_double(channel.values[t]);
        }
        out << "\n";
    }
    if (!out) {
        throw Error(ErrorCode::IoError, "failed writing " + path);
    }
}

} // namespace tsbench
