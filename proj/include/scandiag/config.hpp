#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "scandiag/field_reduce.hpp"
#include "scandiag/proxy_eval.hpp"
#include "scandiag/ranking.hpp"
#include "scandiag/track_bench.hpp"

namespace scandiag {

/// Everything a pipeline run depends on. Serialized as one JSON document;
/// every key is optional and falls back to the defaults below.
struct PipelineConfig {
    TrackLayout layout;
    StrategyParams strategy;
    ProxyConfig proxy;
    ReductionConfig reduction;
    WeightVector weights;
    double sweep_step = 0.1;
    ProxyWeights screen_weights{{"proxy_jump_mean", 1.0}};
    int screen_top_m = 3;

    std::filesystem::path labels_csv;  // pre-reduced labels
    std::filesystem::path fields_dir;  // one field table per strategy
    std::filesystem::path out_dir = ".";

    /// Runs every owning module's validity check; throws InvalidArgument.
    void validate() const;
};

/// Parses a config document. Unknown keys and wrong types throw InvalidArgument.
/// Relative paths are resolved against `base_dir`.
PipelineConfig config_from_json(const nlohmann::json& doc, const std::filesystem::path& base_dir = {});
PipelineConfig load_config(const std::filesystem::path& path);

/// Full config including paths.
nlohmann::json config_to_json(const PipelineConfig& config);
/// Config without output location, as echoed into run reports.
nlohmann::json config_echo(const PipelineConfig& config);

} // namespace scandiag
