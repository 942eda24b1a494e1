#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "scandiag/alignment.hpp"
#include "scandiag/config.hpp"
#include "scandiag/proxy_eval.hpp"
#include "scandiag/ranking.hpp"
#include "scandiag/track_bench.hpp"

namespace scandiag {

inline constexpr const char* kToolName = "scandiag";
inline constexpr const char* kToolVersion = "0.1.0";

struct ScreenEntry {
    int position = 0;  // 1-based, ascending J_proxy
    std::string strategy_id;
    double score = 0.0;
    bool selected = false;
};

/// Sorts strategies ascending by J_proxy (ties by id) and marks the first
/// top_m selected. top_m must lie in 1..M.
std::vector<ScreenEntry> screen(const ProxyMatrix& proxies, const ProxyWeights& weights, int top_m);

/// Labels for the given strategies from whichever source the config names.
/// Exactly one of labels_csv / fields_dir must be set.
struct LoadedLabels {
    LabelSet labels;
    std::string source;                          // "labels_csv" or "field_tables"
    std::map<std::string, std::string> digests;  // file name -> sha256
    std::vector<std::string> warnings;
};
LoadedLabels load_labels(const PipelineConfig& config, const std::vector<std::string>& strategy_ids);

/// One complete diagnostic run: generation, proxy scoring, screening, labels,
/// ranking, robustness sweep and alignment.
struct RunReport {
    PipelineConfig config;
    std::vector<ScanOrder> strategies;
    ProxyMatrix proxies;
    std::vector<ScreenEntry> screening;
    LoadedLabels labels;
    RankingResult ranking;
    std::vector<TradeoffPoint> tradeoff;
    RobustnessResult robustness;
    AlignmentReport alignment;
};

RunReport run_pipeline(const PipelineConfig& config);

nlohmann::json report_to_json(const RunReport& report);

/// Rounds every float to 6 significant digits and serializes with sorted keys,
/// two-space indent and a trailing newline.
std::string dump_deterministic(const nlohmann::json& doc);

/// Writes report.json, tradeoff.svg, robustness.svg and agreement.svg.
void write_run_outputs(const RunReport& report, const std::filesystem::path& out_dir);

} // namespace scandiag
