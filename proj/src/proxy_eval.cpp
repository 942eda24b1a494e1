#include "scandiag/proxy_eval.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <limits>

#include "scandiag/alignment.hpp"
#include "scandiag/errors.hpp"
#include "scandiag/heat_field.hpp"

namespace scandiag {

namespace {

constexpr std::array<MetricInfo, 11> kCatalog = {{
    {metric::jump_mean, MetricGroup::v1, false},
    {metric::jump_min, MetricGroup::v1, false},
    {metric::neighbour_gap_mean, MetricGroup::v1, false},
    {metric::hot_cluster_score, MetricGroup::v1, false},
    {metric::thermal_memory_peak, MetricGroup::v1, false},
    {metric::symmetry_score, MetricGroup::v1, false},
    {metric::all_window_dispersion_mean, MetricGroup::v2, false},
    {metric::early_window_pairwise_distance_mean, MetricGroup::v2, false},
    {metric::edge_first_ratio, MetricGroup::v2, false},
    {metric::stress_risk_candidate, MetricGroup::v2, true},
    {metric::distortion_risk_candidate, MetricGroup::v2, true},
}};

std::size_t ceil_div(std::size_t a, std::size_t b) { return (a + b - 1) / b; }

// Mean over sliding windows of the mean pairwise distance among the windowed
// visits, restricted to the first `prefix` visits.
double window_dispersion(std::span<const int> order, std::span<const double> xs,
                         std::size_t prefix, std::size_t window) {
    const std::size_t w = std::min(window, prefix);
    if (w < 2) return 0.0;
    double total = 0.0;
    std::size_t windows = 0;
    for (std::size_t start = 0; start + w <= prefix; ++start, ++windows) {
        double pair_sum = 0.0;
        for (std::size_t a = start; a < start + w; ++a) {
            for (std::size_t b = a + 1; b < start + w; ++b) {
                pair_sum += std::abs(xs[static_cast<std::size_t>(order[a])] -
                                     xs[static_cast<std::size_t>(order[b])]);
            }
        }
        total += pair_sum / static_cast<double>(w * (w - 1) / 2);
    }
    return total / static_cast<double>(windows);
}

double heat_peak(std::span<const int> order, std::span<const double> xs, double sigma, double decay) {
    HeatField heat(xs, sigma, decay);
    double peak = 0.0;
    for (int t : order) peak = std::max(peak, heat.deposit(t));
    return peak;
}

void fill_risk_candidates(std::vector<ProxyVector>& rows) {
    if (rows.empty()) return;
    MetricRange disp{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    MetricRange jump = disp;
    MetricRange gap = disp;
    auto widen = [](MetricRange& r, double v) {
        r.min = std::min(r.min, v);
        r.max = std::max(r.max, v);
    };
    for (const auto& row : rows) {
        widen(disp, row.find(metric::all_window_dispersion_mean)->second);
        widen(jump, row.find(metric::jump_mean)->second);
        widen(gap, row.find(metric::neighbour_gap_mean)->second);
    }
    for (auto& row : rows) {
        row[std::string(metric::stress_risk_candidate)] =
            0.5 * normalize(row.find(metric::all_window_dispersion_mean)->second, disp) +
            0.5 * normalize(row.find(metric::jump_mean)->second, jump);
        row[std::string(metric::distortion_risk_candidate)] =
            1.0 - normalize(row.find(metric::neighbour_gap_mean)->second, gap);
    }
}

ProxyMatrix finalize(std::span<const ScanOrder> orders, std::vector<ProxyVector> rows) {
    fill_risk_candidates(rows);
    ProxyMatrix m;
    m.strategy_ids.reserve(orders.size());
    for (const auto& o : orders) m.strategy_ids.push_back(o.strategy_id);
    m.stats = compute_stats(rows);
    m.rows = std::move(rows);
    return m;
}

ProxyVector base_vector(std::span<const int> order, std::span<const double> xs, const ProxyConfig& cfg) {
    const std::size_t n = order.size();
    if (n < 2) throw InvalidArgument("proxy metrics need at least 2 tracks");
    if (xs.size() != n) throw InvalidArgument("order and position counts differ");
    std::vector<int> steps(n, -1);
    for (std::size_t t = 0; t < n; ++t) {
        const int track = order[t];
        if (track < 0 || static_cast<std::size_t>(track) >= n || steps[static_cast<std::size_t>(track)] >= 0) {
            throw InvalidArgument("scan order is not a permutation");
        }
        steps[static_cast<std::size_t>(track)] = static_cast<int>(t);
    }

    ProxyVector p;

    double jump_sum = 0.0;
    double jump_min = std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t + 1 < n; ++t) {
        const double j = std::abs(xs[static_cast<std::size_t>(order[t + 1])] - xs[static_cast<std::size_t>(order[t])]);
        jump_sum += j;
        jump_min = std::min(jump_min, j);
    }
    p[std::string(metric::jump_mean)] = jump_sum / static_cast<double>(n - 1);
    p[std::string(metric::jump_min)] = jump_min;

    // Spatial neighbours are i and i+1; each adjacent pair counts once.
    double gap_sum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) gap_sum += std::abs(steps[i + 1] - steps[i]);
    p[std::string(metric::neighbour_gap_mean)] = gap_sum / static_cast<double>(n - 1);

    const auto window = static_cast<std::size_t>(cfg.window);
    p[std::string(metric::all_window_dispersion_mean)] = window_dispersion(order, xs, n, window);
    const std::size_t early = std::min(n, std::max<std::size_t>(2, ceil_div(n, 4)));
    p[std::string(metric::early_window_pairwise_distance_mean)] = window_dispersion(order, xs, early, window);

    const std::size_t lead = ceil_div(n, 4);
    const std::size_t band = ceil_div(n, 8);
    std::size_t in_band = 0;
    for (std::size_t t = 0; t < lead; ++t) {
        const auto track = static_cast<std::size_t>(order[t]);
        if (track < band || track >= n - band) ++in_band;
    }
    p[std::string(metric::edge_first_ratio)] = static_cast<double>(in_band) / static_cast<double>(lead);

    const double spacing = std::abs(xs[n - 1] - xs[0]) / static_cast<double>(n - 1);
    p[std::string(metric::hot_cluster_score)] =
        heat_peak(order, xs, cfg.hot_deposit_width * spacing, cfg.hot_decay);
    p[std::string(metric::thermal_memory_peak)] =
        heat_peak(order, xs, cfg.memory_deposit_width * spacing, cfg.memory_decay);

    std::vector<double> fwd(n);
    std::vector<double> mirrored(n);
    for (std::size_t i = 0; i < n; ++i) {
        fwd[i] = steps[i];
        mirrored[i] = steps[n - 1 - i];
    }
    p[std::string(metric::symmetry_score)] = pearson(fwd, mirrored);
    return p;
}

} // namespace

std::span<const MetricInfo> proxy_metric_catalog() { return kCatalog; }

MetricGroup metric_group(std::string_view id) {
    for (const auto& info : kCatalog) {
        if (info.id == id) return info.group;
    }
    throw InvalidArgument("unknown proxy metric '" + std::string(id) + "'");
}

std::string_view to_string(MetricGroup group) { return group == MetricGroup::v1 ? "v1" : "v2"; }

void ProxyConfig::validate() const {
    if (window < 2) throw InvalidArgument("proxy window must be at least 2");
    for (double w : {hot_deposit_width, memory_deposit_width}) {
        if (!(w > 0.0) || !std::isfinite(w)) throw InvalidArgument("proxy deposit width must be positive");
    }
    for (double d : {hot_decay, memory_decay}) {
        if (!(d > 0.0 && d <= 1.0)) throw InvalidArgument("proxy decay must lie in (0, 1]");
    }
}

double normalize(double value, const MetricRange& range) {
    if (range.degenerate()) return 0.0;
    return (value - range.min) / (range.max - range.min);
}

ProxyVector proxy_vector(std::span<const int> order, std::span<const double> positions,
                         const ProxyConfig& config) {
    config.validate();
    std::vector<ProxyVector> one{base_vector(order, positions, config)};
    fill_risk_candidates(one);
    return std::move(one.front());
}

ProxyVector proxy_vector(const ScanOrder& order, const TrackLayout& layout, const ProxyConfig& config) {
    layout.validate();
    if (order.order.size() != static_cast<std::size_t>(layout.track_count)) {
        throw InvalidArgument("scan order length differs from track_count");
    }
    const std::vector<double> xs = layout.positions();
    return proxy_vector(order.order, xs, config);
}

const ProxyVector& ProxyMatrix::row(std::string_view strategy_id) const {
    for (std::size_t i = 0; i < strategy_ids.size(); ++i) {
        if (strategy_ids[i] == strategy_id) return rows[i];
    }
    throw InvalidArgument("no proxy row for strategy '" + std::string(strategy_id) + "'");
}

std::vector<double> ProxyMatrix::column(std::string_view metric_id) const {
    std::vector<double> col;
    col.reserve(rows.size());
    for (const auto& r : rows) {
        auto it = r.find(metric_id);
        if (it == r.end()) throw InvalidArgument("unknown proxy metric '" + std::string(metric_id) + "'");
        col.push_back(it->second);
    }
    return col;
}

ProxyMatrix proxy_matrix(std::span<const ScanOrder> orders, const TrackLayout& layout,
                         const ProxyConfig& config) {
    layout.validate();
    config.validate();
    const std::vector<double> xs = layout.positions();
    const auto count = static_cast<std::ptrdiff_t>(orders.size());
    std::vector<ProxyVector> rows(orders.size());
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        try {
            rows[static_cast<std::size_t>(i)] = base_vector(orders[static_cast<std::size_t>(i)].order, xs, config);
        } catch (...) {
            errors[static_cast<std::size_t>(i)] = std::current_exception();
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return finalize(orders, std::move(rows));
}

ProxyMatrix proxy_matrix_serial(std::span<const ScanOrder> orders, const TrackLayout& layout,
                                const ProxyConfig& config) {
    layout.validate();
    config.validate();
    const std::vector<double> xs = layout.positions();
    std::vector<ProxyVector> rows;
    rows.reserve(orders.size());
    for (const auto& o : orders) rows.push_back(base_vector(o.order, xs, config));
    return finalize(orders, std::move(rows));
}

NormalizationStats compute_stats(std::span<const ProxyVector> rows) {
    NormalizationStats stats;
    if (rows.empty()) return stats;
    for (const auto& [id, v] : rows.front()) stats[id] = MetricRange{v, v};
    for (const auto& row : rows) {
        if (row.size() != stats.size()) throw InvalidArgument("proxy rows carry different metric sets");
        for (const auto& [id, v] : row) {
            auto it = stats.find(id);
            if (it == stats.end()) throw InvalidArgument("proxy rows carry different metric sets");
            it->second.min = std::min(it->second.min, v);
            it->second.max = std::max(it->second.max, v);
        }
    }
    return stats;
}

double proxy_score(const ProxyVector& p, const ProxyWeights& weights, const NormalizationStats& stats) {
    double score = 0.0;
    for (const auto& [id, alpha] : weights) {
        auto value = p.find(id);
        if (value == p.end()) throw InvalidArgument("weighted metric '" + id + "' missing from proxy vector");
        auto range = stats.find(id);
        if (range == stats.end()) throw InvalidArgument("no normalization stats for metric '" + id + "'");
        score += alpha * normalize(value->second, range->second);
    }
    return score;
}

} // namespace scandiag
