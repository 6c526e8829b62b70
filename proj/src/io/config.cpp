#include "tsbench/io/config.hpp"

#include "tsbench/core/rng.hpp"

#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

namespace tsbench {

namespace fs = std::filesystem;
using nlohmann::json;

std::size_t default_horizon_for(FrequencyLabel label) {
    switch (label) {
        case FrequencyLabel::Yearly: return 6;
        case FrequencyLabel::Quarterly: return 8;
        case FrequencyLabel::Monthly: return 18;
        case FrequencyLabel::Weekly: return 13;
        case FrequencyLabel::Daily: return 14;
        case FrequencyLabel::Hourly: return 48;
        case FrequencyLabel::Other: return 8;
    }
    return 8;
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
    throw Error(ErrorCode::SchemaError, path + ": " + what);
}

void reject_unknown_keys(const json& object, const std::set<std::string>& allowed,
                         const std::string& path) {
    for (const auto& [key, value] : object.items()) {
        if (!allowed.contains(key)) {
            schema_fail(path + "/" + key, "unknown key");
        }
    }
}

template <typename T>
T get_or(const json& object, const std::string& key, const T& fallback,
         const std::string& path) {
    if (!object.contains(key)) return fallback;
    try {
        return object.at(key).get<T>();
    } catch (const json::exception&) {
        schema_fail(path + "/" + key, "wrong type");
    }
}

std::vector<std::size_t> parse_horizons(const json& array, const std::string& path) {
    if (!array.is_array() || array.empty()) {
        schema_fail(path, "horizons must be a non-empty array of positive integers");
    }
    std::vector<std::size_t> horizons;
    for (const auto& h : array) {
        if (!h.is_number_unsigned() || h.get<std::size_t>() == 0) {
            schema_fail(path, "horizons must be positive integers");
        }
        horizons.push_back(h.get<std::size_t>());
    }
    return horizons;
}

DatasetManifest parse_manifest(const json& entry, const std::string& base_dir,
                               const std::string& path) {
    if (!entry.is_object()) schema_fail(path, "dataset entry must be an object");
    reject_unknown_keys(entry,
                        {"path", "name", "domain", "frequency", "seasonal_period",
                         "split", "channels", "fill_policy", "horizons"},
                        path);
    if (!entry.contains("path")) schema_fail(path, "dataset entry needs a 'path'");

    DatasetManifest manifest;
    std::string file = get_or<std::string>(entry, "path", "", path);
    fs::path resolved(file);
    if (resolved.is_relative() && !base_dir.empty()) {
        resolved = fs::path(base_dir) / resolved;
    }
    manifest.path = resolved.string();
    manifest.name = get_or<std::string>(entry, "name", "", path);
    manifest.domain_tag = get_or<std::string>(entry, "domain", "", path);
    if (entry.contains("frequency")) {
        manifest.frequency =
            parse_frequency_label(get_or<std::string>(entry, "frequency", "other", path));
    }
    if (entry.contains("seasonal_period")) {
        const int period = get_or<int>(entry, "seasonal_period", 1, path);
        if (period < 1) schema_fail(path + "/seasonal_period", "must be >= 1");
        manifest.seasonal_period = period;
    }
    if (entry.contains("split")) {
        const auto split = entry.at("split");
        if (!split.is_array() || split.size() != 3) {
            schema_fail(path + "/split", "split must be [train, val, test]");
        }
        manifest.split.train_fraction = split.at(0).get<double>();
        manifest.split.val_fraction = split.at(1).get<double>();
        manifest.split.test_fraction = split.at(2).get<double>();
        try {
            manifest.split.validate();
        } catch (const Error&) {
            throw Error(ErrorCode::InvalidSplit,
                        path + "/split: fractions must lie in (0,1) and sum to 1");
        }
    }
    manifest.channel_subset =
        get_or<std::vector<std::string>>(entry, "channels", {}, path);
    manifest.fill_policy =
        parse_fill_policy(get_or<std::string>(entry, "fill_policy", "reject", path));
    return manifest;
}

MethodSpec parse_method(const json& entry, std::uint64_t run_seed,
                        const std::string& path) {
    if (!entry.is_object()) schema_fail(path, "method entry must be an object");
    reject_unknown_keys(entry,
                        {"name", "mode", "seed", "retrain_each_window", "hyperparameters"},
                        path);
    if (!entry.contains("name")) schema_fail(path, "method entry needs a 'name'");

    MethodSpec spec;
    spec.name = get_or<std::string>(entry, "name", "", path);
    spec.prediction_mode =
        parse_prediction_mode(get_or<std::string>(entry, "mode", "DMS", path));
    spec.deterministic_seed = get_or<std::uint64_t>(entry, "seed", run_seed, path);
    if (entry.contains("retrain_each_window")) {
        spec.retrain_each_window = get_or<bool>(entry, "retrain_each_window", true, path);
    }
    if (entry.contains("hyperparameters")) {
        const auto& params = entry.at("hyperparameters");
        if (!params.is_object()) schema_fail(path + "/hyperparameters", "must be an object");
        for (const auto& [key, value] : params.items()) {
            if (value.is_string()) {
                spec.hyperparameters[key] = value.get<std::string>();
            } else if (value.is_number_integer()) {
                spec.hyperparameters[key] = std::to_string(value.get<long long>());
            } else if (value.is_number_float()) {
                std::ostringstream ss;
                ss << value.get<double>();
                spec.hyperparameters[key] = ss.str();
            } else {
                schema_fail(path + "/hyperparameters/" + key,
                            "must be a string or number");
            }
        }
    }
    validate_method_spec(spec);
    return spec;
}

} // namespace

RunConfig parse_config_text(const std::string& text, const std::string& base_dir) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::SchemaError, std::string("config is not valid JSON: ") +
                                                e.what());
    }
    if (!root.is_object()) schema_fail("", "config root must be an object");
    reject_unknown_keys(root,
                        {"seed", "strategy", "horizons", "lookback", "stride", "metrics",
                         "normalization", "raw_scale_metrics", "output_dir",
                         "parallelism", "batch_size", "datasets", "methods"},
                        "");

    RunConfig config;
    config.seed = get_or<std::uint64_t>(root, "seed", 0, "");
    config.strategy =
        parse_strategy(get_or<std::string>(root, "strategy", "rolling", ""));
    config.lookback = get_or<std::size_t>(root, "lookback", 0, "");
    config.stride = get_or<std::size_t>(root, "stride", 1, "");
    if (config.stride < 1) schema_fail("/stride", "must be >= 1");
    config.normalization =
        get_or<std::string>(root, "normalization", "zscore", "") == "none"
            ? Normalization::None
            : Normalization::Zscore;
    {
        const std::string norm = get_or<std::string>(root, "normalization", "zscore", "");
        if (norm != "zscore" && norm != "none") {
            schema_fail("/normalization", "must be 'zscore' or 'none'");
        }
    }
    config.raw_scale_metrics = get_or<bool>(root, "raw_scale_metrics", false, "");
    config.output_dir = get_or<std::string>(root, "output_dir", "results", "");
    config.parallelism = get_or<std::size_t>(root, "parallelism", 1, "");
    if (config.parallelism < 1) schema_fail("/parallelism", "must be >= 1");
    config.batch_size = get_or<std::size_t>(root, "batch_size", 32, "");
    if (config.batch_size < 1) schema_fail("/batch_size", "must be >= 1");

    if (!root.contains("metrics")) schema_fail("/metrics", "required");
    const auto& metric_tokens = root.at("metrics");
    if (!metric_tokens.is_array() || metric_tokens.empty()) {
        schema_fail("/metrics", "must be a non-empty array");
    }
    for (const auto& token : metric_tokens) {
        if (!token.is_string()) schema_fail("/metrics", "metric names must be strings");
        config.metrics.push_back(parse_metric_name(token.get<std::string>()));
    }

    std::vector<std::size_t> global_horizons;
    if (root.contains("horizons")) {
        global_horizons = parse_horizons(root.at("horizons"), "/horizons");
    }

    if (!root.contains("datasets")) schema_fail("/datasets", "required");
    const auto& datasets = root.at("datasets");
    if (!datasets.is_array() || datasets.empty()) {
        schema_fail("/datasets", "must be a non-empty array");
    }
    for (std::size_t i = 0; i < datasets.size(); ++i) {
        const std::string path = "/datasets/" + std::to_string(i);
        DatasetManifest manifest = parse_manifest(datasets.at(i), base_dir, path);
        Dataset dataset = load_dataset(manifest);
        std::vector<std::size_t> horizons = global_horizons;
        if (datasets.at(i).contains("horizons")) {
            horizons = parse_horizons(datasets.at(i).at("horizons"), path + "/horizons");
        }
        if (horizons.empty()) {
            horizons = {default_horizon_for(
                dataset.channels.front().frequency_label)};
        }
        config.manifests.push_back(std::move(manifest));
        config.datasets.push_back(std::move(dataset));
        config.horizons.push_back(std::move(horizons));
    }

    if (!root.contains("methods")) schema_fail("/methods", "required");
    const auto& methods = root.at("methods");
    if (!methods.is_array() || methods.empty()) {
        schema_fail("/methods", "must be a non-empty array");
    }
    for (std::size_t i = 0; i < methods.size(); ++i) {
        config.methods.push_back(
            parse_method(methods.at(i), config.seed, "/methods/" + std::to_string(i)));
    }

    // fail-fast: every (dataset, horizon, method) must form a valid plan
    for (std::size_t d = 0; d < config.datasets.size(); ++d) {
        for (std::size_t horizon : config.horizons[d]) {
            for (const auto& method : config.methods) {
                EvaluationPlan plan;
                plan.dataset = &config.datasets[d];
                plan.method = method;
                plan.strategy = config.strategy;
                plan.horizon = horizon;
                plan.lookback = config.lookback;
                plan.stride = config.stride;
                plan.metrics = config.metrics;
                plan.normalization = config.normalization;
                plan.raw_scale_metrics = config.raw_scale_metrics;
                plan.batch_size = config.batch_size;
                plan.validate();
            }
        }
    }

    // canonical form: nlohmann dumps object keys sorted
    config.canonical_dump = root.dump();
    config.refresh_fingerprint();
    return config;
}

void RunConfig::refresh_fingerprint() {
    Fnv1a hash;
    hash.update_string(canonical_dump);
    hash.update(&seed, sizeof(seed));
    std::ostringstream fp;
    fp << std::hex << hash.digest();
    fingerprint = fp.str();
}

RunConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorCode::IoError, "cannot open config " + path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_config_text(buffer.str(), fs::path(path).parent_path().string());
}

} // namespace tsbench
