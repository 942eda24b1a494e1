#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scandiag/track_bench.hpp"

namespace scandiag {

namespace metric {
inline constexpr std::string_view jump_mean = "proxy_jump_mean";
inline constexpr std::string_view jump_min = "proxy_jump_min";
inline constexpr std::string_view neighbour_gap_mean = "neighbour_gap_mean";
inline constexpr std::string_view all_window_dispersion_mean = "all_window_dispersion_mean";
inline constexpr std::string_view early_window_pairwise_distance_mean = "early_window_pairwise_distance_mean";
inline constexpr std::string_view edge_first_ratio = "edge_first_ratio";
inline constexpr std::string_view hot_cluster_score = "hot_cluster_score";
inline constexpr std::string_view symmetry_score = "symmetry_score";
inline constexpr std::string_view thermal_memory_peak = "thermal_memory_peak";
inline constexpr std::string_view stress_risk_candidate = "proxy_stress_risk_candidate";
inline constexpr std::string_view distortion_risk_candidate = "proxy_distortion_risk_candidate";
} // namespace metric

/// Metric families: v1 = path-spacing and heat descriptors, v2 = window/edge
/// descriptors and the experimental risk composites.
enum class MetricGroup { v1, v2 };

struct MetricInfo {
    std::string_view id;
    MetricGroup group;
    bool experimental;
};

/// All proxy metrics in report order.
std::span<const MetricInfo> proxy_metric_catalog();
MetricGroup metric_group(std::string_view id);
std::string_view to_string(MetricGroup group);

struct ProxyConfig {
    int window = 4;                  // all_window / early_window width
    double hot_decay = 0.7;          // hot_cluster_score heat model
    double hot_deposit_width = 2.0;  // sigma in pitch units
    double memory_decay = 0.7;       // thermal_memory_peak heat model
    double memory_deposit_width = 2.0;

    void validate() const;
};

using ProxyVector = std::map<std::string, double, std::less<>>;
using ProxyWeights = std::map<std::string, double, std::less<>>;

struct MetricRange {
    double min = 0.0;
    double max = 0.0;
    bool degenerate() const { return !(max > min); }
};

/// Per-metric min/max over an evaluated strategy set.
using NormalizationStats = std::map<std::string, MetricRange, std::less<>>;

/// Min-max normalized value in [0,1]; 0 for a degenerate range.
double normalize(double value, const MetricRange& range);

/// Descriptors for one order over arbitrary track positions. The two risk
/// candidates are set-relative; evaluated alone they see a one-element set.
ProxyVector proxy_vector(std::span<const int> order, std::span<const double> positions,
                         const ProxyConfig& config = {});
ProxyVector proxy_vector(const ScanOrder& order, const TrackLayout& layout,
                         const ProxyConfig& config = {});

/// Proxy vectors for a strategy set, one row per order, in input order.
struct ProxyMatrix {
    std::vector<std::string> strategy_ids;
    std::vector<ProxyVector> rows;
    NormalizationStats stats;

    const ProxyVector& row(std::string_view strategy_id) const;
    std::vector<double> column(std::string_view metric_id) const;
};

/// Evaluates every order in parallel (OpenMP), then fills the set-relative
/// risk candidates and the normalization stats in a separate pass.
ProxyMatrix proxy_matrix(std::span<const ScanOrder> orders, const TrackLayout& layout,
                         const ProxyConfig& config = {});
/// Serial reference for proxy_matrix.
ProxyMatrix proxy_matrix_serial(std::span<const ScanOrder> orders, const TrackLayout& layout,
                                const ProxyConfig& config = {});

NormalizationStats compute_stats(std::span<const ProxyVector> rows);

/// J_proxy = sum_k alpha_k * normalized(p_k).
double proxy_score(const ProxyVector& p, const ProxyWeights& weights, const NormalizationStats& stats);

} // namespace scandiag
