#pragma once

#include "tsbench/eval/evaluation.hpp"
#include "tsbench/io/dataset_io.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace tsbench {

/// A fully validated run request. Datasets are loaded eagerly so every
/// (dataset, horizon) pair is checked against the strategy preconditions
/// before any work starts.
struct RunConfig {
    std::vector<DatasetManifest> manifests;
    std::vector<Dataset> datasets;
    std::vector<std::vector<std::size_t>> horizons; // per dataset
    std::vector<MethodSpec> methods;
    Strategy strategy = Strategy::Rolling;
    std::size_t lookback = 0; // 0 = auto
    std::size_t stride = 1;
    std::vector<MetricKind> metrics;
    Normalization normalization = Normalization::Zscore;
    bool raw_scale_metrics = false;
    std::uint64_t seed = 0;
    std::string output_dir = "results";
    std::size_t parallelism = 1;
    std::size_t batch_size = 32;

    std::string canonical_dump; // canonical JSON text of the parsed config
    std::string fingerprint;    // stable hash of canonical_dump + seed

    /// Recompute the fingerprint (after a CLI seed override, for example).
    /// Execution knobs (parallelism, batch size) do not participate.
    void refresh_fingerprint();
};

/// Parses and validates a JSON run configuration. Unknown keys are rejected
/// with their path. Errors: SchemaError, UnknownMethod, InvalidSplit, IoError.
RunConfig parse_config(const std::string& path);
RunConfig parse_config_text(const std::string& text, const std::string& base_dir);

/// Default per-frequency fixed-strategy horizon used when a dataset entry
/// carries no explicit horizons and the config has no global list.
std::size_t default_horizon_for(FrequencyLabel label);

} // namespace tsbench
