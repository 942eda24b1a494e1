#pragma once

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "scandiag/field_reduce.hpp"

namespace scandiag {

/// Labels per strategy, kept in insertion order. Ids are unique.
class LabelSet {
public:
    struct Entry {
        std::string strategy_id;
        LabelVector labels;
    };

    LabelSet() = default;
    explicit LabelSet(std::vector<Entry> entries);

    /// Throws InvalidArgument on a duplicate id or a non-finite / out-of-range label.
    void add(std::string strategy_id, const LabelVector& labels);

    std::size_t size() const noexcept { return entries_.size(); }
    bool empty() const noexcept { return entries_.empty(); }
    const std::vector<Entry>& entries() const noexcept { return entries_; }
    bool contains(std::string_view strategy_id) const;
    const LabelVector& at(std::string_view strategy_id) const;
    std::vector<std::string> ids() const;

    /// Entries restricted to `ids`, in the order of `ids`. Throws InputMismatch
    /// naming every id absent from the set.
    LabelSet select(const std::vector<std::string>& ids) const;

private:
    std::vector<Entry> entries_;
};

/// Simplex weights over (mises, u3, peeq).
struct WeightVector {
    double beta_sigma = 0.4;
    double beta_u = 0.4;
    double beta_p = 0.2;

    static constexpr double kSumTolerance = 1e-9;
    void validate() const;
};

using NormalizedTriple = std::array<double, 3>;

struct NormalizedLabels {
    std::vector<std::string> strategy_ids;
    std::vector<NormalizedTriple> values;
    std::array<std::pair<double, double>, 3> ranges{};  // raw (min, max) per metric
    std::vector<std::string> warnings;

    const NormalizedTriple& at(std::string_view strategy_id) const;
};

/// Per-metric min-max over the set, larger = worse for all three metrics.
/// A constant metric normalizes to 0 and adds a warning.
NormalizedLabels normalize_labels(const LabelSet& set);

double composite_score(const NormalizedTriple& normalized, const WeightVector& w);

struct RankedEntry {
    int rank = 0;
    std::string strategy_id;
    NormalizedTriple normalized{};
    double score = 0.0;
};

struct RankingResult {
    WeightVector weights;
    std::vector<RankedEntry> entries;  // ascending score, ties by strategy_id
    std::vector<std::string> warnings;

    int rank_of(std::string_view strategy_id) const;
};

RankingResult rank(const LabelSet& set, const WeightVector& w);
/// Ranking over an already-normalized set, reused by the sweep.
RankingResult rank_normalized(const NormalizedLabels& normalized, const WeightVector& w);

/// All (i, j, k) * step with i + j + k = 1/step. step must divide 1 evenly.
std::vector<WeightVector> simplex_grid(double step);

struct RobustnessResult {
    std::vector<std::string> strategy_ids;  // label-set order
    std::vector<WeightVector> grid;
    std::vector<std::vector<int>> ranks;    // ranks[strategy][weighting]
    std::vector<std::pair<int, int>> rank_range;  // (min, max) per strategy
};

/// Rank matrix over the weight grid, weightings evaluated in parallel (OpenMP).
RobustnessResult robustness_sweep(const LabelSet& set, const std::vector<WeightVector>& grid);
/// Serial reference for robustness_sweep.
RobustnessResult robustness_sweep_serial(const LabelSet& set, const std::vector<WeightVector>& grid);

struct TradeoffPoint {
    std::string strategy_id;
    double mises = 0.0;
    double u3 = 0.0;
    bool dominated = false;
};

/// Raw (mises, u3) per strategy with 2-D Pareto dominance flags (both minimized).
std::vector<TradeoffPoint> tradeoff_points(const LabelSet& set);

} // namespace scandiag
