#pragma once

#include "tsbench/core/series.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tsbench {

enum class FillPolicy { Reject, ForwardFill, LinearInterpolate };

FillPolicy parse_fill_policy(const std::string& token);
const char* fill_policy_name(FillPolicy policy);

/// Where a dataset lives and how to read it. The canonical on-disk format is
/// a wide CSV whose first column is "date" (ISO-8601 date, datetime, or a
/// plain integer index) and whose remaining columns are one channel each.
/// An optional sidecar "<basename>.meta" carries key-value metadata
/// (frequency, seasonal_period, domain) in plain text.
struct DatasetManifest {
    std::string path;
    std::string name;       // default: file stem
    std::string domain_tag;
    std::optional<FrequencyLabel> frequency;
    std::optional<int> seasonal_period;
    SplitSpec split;
    std::vector<std::string> channel_subset; // empty = all channels
    FillPolicy fill_policy = FillPolicy::Reject;
};

struct LoadInfo {
    std::size_t filled_cells = 0;
};

/// Parses the manifest's CSV into a validated Dataset.
/// Errors: IoError, ParseError (row/column located), MissingValues (when the
/// fill policy is Reject), RaggedRows.
Dataset load_dataset(const DatasetManifest& manifest, LoadInfo* info = nullptr);

/// Writes the canonical wide CSV. Values use shortest round-trip formatting,
/// so loading the output reproduces the numeric content bit-exactly.
void save_dataset(const Dataset& dataset, const std::string& path);

/// Key-value sidecar ("key: value" per line, '#' comments).
std::optional<std::string> sidecar_path_for(const std::string& csv_path);
std::vector<std::pair<std::string, std::string>> read_key_value_file(
    const std::string& path);

} // namespace tsbench
