#include "tsbench/forecast/forecaster.hpp"

#include "tsbench/core/rng.hpp"
#include "tsbench/forecast/baselines.hpp"
#include "tsbench/forecast/external.hpp"

#include <algorithm>
#include <set>

namespace tsbench {

PredictionMode parse_prediction_mode(const std::string& token) {
    if (token == "DMS" || token == "dms") return PredictionMode::Dms;
    if (token == "IMS" || token == "ims") return PredictionMode::Ims;
    throw Error(ErrorCode::SchemaError, "unknown prediction mode '" + token + "'");
}

const char* prediction_mode_name(PredictionMode mode) {
    return mode == PredictionMode::Dms ? "DMS" : "IMS";
}

void Forecaster::record_training_slice(const Frame& train) {
    Fnv1a hash;
    hash.update(&train.rows, sizeof(train.rows));
    hash.update(&train.cols, sizeof(train.cols));
    if (!train.data.empty()) {
        hash.update(train.data.data(), train.data.size() * sizeof(double));
    }
    training_fingerprint_ = hash.digest();
    fitted_channels_ = train.cols;
}

void Forecaster::check_history(const Frame& history, std::size_t horizon) const {
    if (fitted_channels_ == 0) {
        throw Error(ErrorCode::ShapeMismatch, "forecast before fit");
    }
    if (history.cols != fitted_channels_) {
        throw Error(ErrorCode::ShapeMismatch,
                    "history has " + std::to_string(history.cols) +
                        " channels, model was fitted on " +
                        std::to_string(fitted_channels_));
    }
    if (history.rows == 0) {
        throw Error(ErrorCode::InsufficientData, "empty history");
    }
    if (horizon < 1) {
        throw Error(ErrorCode::ShapeMismatch, "horizon must be >= 1");
    }
}

void Forecaster::check_output(const Frame& forecast) {
    if (!forecast.all_finite()) {
        throw Error(ErrorCode::NonFiniteOutput, "forecast contains non-finite values");
    }
}

namespace {

struct MethodInfo {
    std::set<std::string> allowed_keys;
    std::set<std::string> required_keys;
};

const std::map<std::string, MethodInfo>& method_table() {
    static const std::map<std::string, MethodInfo> table = {
        {"naive", {{}, {}}},
        {"seasonal_naive", {{}, {}}},
        {"linear_regression", {{}, {}}},
        {"var", {{"order"}, {}}},
        {"ets", {{}, {}}},
        {"external", {{"command"}, {"command"}}},
    };
    return table;
}

int parse_int_param(const MethodSpec& spec, const std::string& key, int fallback) {
    auto it = spec.hyperparameters.find(key);
    if (it == spec.hyperparameters.end()) return fallback;
    try {
        std::size_t pos = 0;
        int value = std::stoi(it->second, &pos);
        if (pos != it->second.size()) throw std::invalid_argument("trailing");
        return value;
    } catch (const std::exception&) {
        throw Error(ErrorCode::SchemaError, "hyperparameter '" + key +
                                                "' of method '" + spec.name +
                                                "' is not an integer: " + it->second);
    }
}

} // namespace

const std::vector<std::string>& known_methods() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> v;
        for (const auto& [name, info] : method_table()) v.push_back(name);
        return v;
    }();
    return names;
}

void validate_method_spec(const MethodSpec& spec) {
    auto it = method_table().find(spec.name);
    if (it == method_table().end()) {
        throw Error(ErrorCode::UnknownMethod, "unknown method '" + spec.name + "'");
    }
    for (const auto& [key, value] : spec.hyperparameters) {
        if (!it->second.allowed_keys.contains(key)) {
            throw Error(ErrorCode::SchemaError, "method '" + spec.name +
                                                    "' does not accept hyperparameter '" +
                                                    key + "'");
        }
    }
    for (const auto& key : it->second.required_keys) {
        if (!spec.hyperparameters.contains(key)) {
            throw Error(ErrorCode::SchemaError, "method '" + spec.name +
                                                    "' requires hyperparameter '" + key +
                                                    "'");
        }
    }
    if (spec.name == "var") {
        const int order = parse_int_param(spec, "order", 1);
        if (order < 1 || order > 8) {
            throw Error(ErrorCode::SchemaError, "var order must lie in [1, 8]");
        }
    }
}

std::unique_ptr<Forecaster> make_forecaster(const MethodSpec& spec) {
    validate_method_spec(spec);
    if (spec.name == "naive") return std::make_unique<NaiveForecaster>();
    if (spec.name == "seasonal_naive") return std::make_unique<SeasonalNaiveForecaster>();
    if (spec.name == "linear_regression") {
        return std::make_unique<LinearRegressionForecaster>(spec.prediction_mode);
    }
    if (spec.name == "var") {
        return std::make_unique<VarForecaster>(parse_int_param(spec, "order", 1));
    }
    if (spec.name == "ets") return std::make_unique<EtsForecaster>();
    if (spec.name == "external") {
        return std::make_unique<ExternalForecaster>(spec.hyperparameters.at("command"),
                                                    spec.deterministic_seed);
    }
    throw Error(ErrorCode::UnknownMethod, "unknown method '" + spec.name + "'");
}

} // namespace tsbench
