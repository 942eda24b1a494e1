#include "scandiag/ranking.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "scandiag/errors.hpp"

namespace scandiag {

namespace {

constexpr std::array<const char*, 3> kMetricNames = {"mises_top5", "u3_range", "peeq_frac"};

NormalizedTriple raw_triple(const LabelVector& v) {
    return {v.mises_top_k_mean, v.u3_range, v.peeq_fraction};
}

void check_labels(const std::string& id, const LabelVector& v) {
    const NormalizedTriple raw = raw_triple(v);
    for (double x : raw) {
        if (!std::isfinite(x)) throw InvalidArgument("non-finite label for strategy '" + id + "'");
    }
    if (v.mises_top_k_mean < 0.0) throw InvalidArgument("negative mises label for strategy '" + id + "'");
    if (v.u3_range < 0.0) throw InvalidArgument("negative u3 range for strategy '" + id + "'");
    if (v.peeq_fraction < 0.0 || v.peeq_fraction > 100.0) {
        throw InvalidArgument("peeq fraction outside [0, 100] for strategy '" + id + "'");
    }
}

} // namespace

LabelSet::LabelSet(std::vector<Entry> entries) {
    entries_.reserve(entries.size());
    for (auto& e : entries) add(std::move(e.strategy_id), e.labels);
}

void LabelSet::add(std::string strategy_id, const LabelVector& labels) {
    if (contains(strategy_id)) throw InvalidArgument("duplicate strategy_id '" + strategy_id + "'");
    check_labels(strategy_id, labels);
    entries_.push_back(Entry{std::move(strategy_id), labels});
}

bool LabelSet::contains(std::string_view strategy_id) const {
    return std::any_of(entries_.begin(), entries_.end(),
                       [&](const Entry& e) { return e.strategy_id == strategy_id; });
}

const LabelVector& LabelSet::at(std::string_view strategy_id) const {
    for (const auto& e : entries_) {
        if (e.strategy_id == strategy_id) return e.labels;
    }
    throw InputMismatch("no labels for strategy '" + std::string(strategy_id) + "'",
                        {std::string(strategy_id)});
}

std::vector<std::string> LabelSet::ids() const {
    std::vector<std::string> out;
    out.reserve(entries_.size());
    for (const auto& e : entries_) out.push_back(e.strategy_id);
    return out;
}

LabelSet LabelSet::select(const std::vector<std::string>& ids) const {
    std::vector<std::string> missing;
    for (const auto& id : ids) {
        if (!contains(id)) missing.push_back(id);
    }
    if (!missing.empty()) {
        std::string msg = "labels missing for strategies:";
        for (const auto& id : missing) msg += " " + id;
        throw InputMismatch(msg, missing);
    }
    LabelSet out;
    for (const auto& id : ids) out.add(id, at(id));
    return out;
}

void WeightVector::validate() const {
    for (double b : {beta_sigma, beta_u, beta_p}) {
        if (!std::isfinite(b) || b < 0.0) throw InvalidArgument("weights must be finite and nonnegative");
    }
    if (std::abs(beta_sigma + beta_u + beta_p - 1.0) > kSumTolerance) {
        throw InvalidArgument("weights must sum to 1");
    }
}

const NormalizedTriple& NormalizedLabels::at(std::string_view strategy_id) const {
    for (std::size_t i = 0; i < strategy_ids.size(); ++i) {
        if (strategy_ids[i] == strategy_id) return values[i];
    }
    throw InvalidArgument("no normalized labels for strategy '" + std::string(strategy_id) + "'");
}

NormalizedLabels normalize_labels(const LabelSet& set) {
    if (set.size() < 2) throw InvalidArgument("normalization needs at least 2 strategies");
    NormalizedLabels out;
    out.strategy_ids = set.ids();
    out.values.resize(set.size());
    for (std::size_t m = 0; m < 3; ++m) {
        double lo = raw_triple(set.entries().front().labels)[m];
        double hi = lo;
        for (const auto& e : set.entries()) {
            const double v = raw_triple(e.labels)[m];
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        out.ranges[m] = {lo, hi};
        const bool degenerate = !(hi > lo);
        if (degenerate) {
            out.warnings.push_back(std::string("metric ") + kMetricNames[m] +
                                   " is constant over the set; normalized to 0");
        }
        for (std::size_t i = 0; i < set.size(); ++i) {
            const double v = raw_triple(set.entries()[i].labels)[m];
            out.values[i][m] = degenerate ? 0.0 : (v - lo) / (hi - lo);
        }
    }
    return out;
}

double composite_score(const NormalizedTriple& normalized, const WeightVector& w) {
    w.validate();
    return w.beta_sigma * normalized[0] + w.beta_u * normalized[1] + w.beta_p * normalized[2];
}

int RankingResult::rank_of(std::string_view strategy_id) const {
    for (const auto& e : entries) {
        if (e.strategy_id == strategy_id) return e.rank;
    }
    throw InvalidArgument("strategy '" + std::string(strategy_id) + "' not ranked");
}

RankingResult rank_normalized(const NormalizedLabels& normalized, const WeightVector& w) {
    w.validate();
    RankingResult result;
    result.weights = w;
    result.warnings = normalized.warnings;
    result.entries.reserve(normalized.strategy_ids.size());
    for (std::size_t i = 0; i < normalized.strategy_ids.size(); ++i) {
        result.entries.push_back(RankedEntry{0, normalized.strategy_ids[i], normalized.values[i],
                                             composite_score(normalized.values[i], w)});
    }
    std::sort(result.entries.begin(), result.entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (a.score != b.score) return a.score < b.score;
        return a.strategy_id < b.strategy_id;
    });
    for (std::size_t i = 0; i < result.entries.size(); ++i) result.entries[i].rank = static_cast<int>(i) + 1;
    return result;
}

RankingResult rank(const LabelSet& set, const WeightVector& w) {
    return rank_normalized(normalize_labels(set), w);
}

std::vector<WeightVector> simplex_grid(double step) {
    if (!(step > 0.0) || step > 1.0) throw InvalidArgument("sweep step must lie in (0, 1]");
    const double divisions = 1.0 / step;
    const long n = std::lround(divisions);
    if (std::abs(divisions - static_cast<double>(n)) > 1e-9 * divisions) {
        throw InvalidArgument("sweep step must divide 1 evenly");
    }
    std::vector<WeightVector> grid;
    grid.reserve(static_cast<std::size_t>((n + 1) * (n + 2) / 2));
    const auto dn = static_cast<double>(n);
    for (long i = n; i >= 0; --i) {
        for (long j = n - i; j >= 0; --j) {
            const long k = n - i - j;
            grid.push_back(WeightVector{static_cast<double>(i) / dn, static_cast<double>(j) / dn,
                                        static_cast<double>(k) / dn});
        }
    }
    return grid;
}

namespace {

RobustnessResult sweep_impl(const LabelSet& set, const std::vector<WeightVector>& grid, bool parallel) {
    if (grid.empty()) throw InvalidArgument("weight grid is empty");
    for (const auto& w : grid) w.validate();
    const NormalizedLabels normalized = normalize_labels(set);

    RobustnessResult out;
    out.strategy_ids = normalized.strategy_ids;
    out.grid = grid;
    const std::size_t m = out.strategy_ids.size();
    out.ranks.assign(m, std::vector<int>(grid.size(), 0));

    auto column = [&](std::size_t g) {
        const RankingResult r = rank_normalized(normalized, grid[g]);
        for (const auto& e : r.entries) {
            const auto pos = static_cast<std::size_t>(
                std::find(out.strategy_ids.begin(), out.strategy_ids.end(), e.strategy_id) -
                out.strategy_ids.begin());
            out.ranks[pos][g] = e.rank;
        }
    };

    const auto count = static_cast<std::ptrdiff_t>(grid.size());
    if (parallel) {
#pragma omp parallel for schedule(static)
        for (std::ptrdiff_t g = 0; g < count; ++g) column(static_cast<std::size_t>(g));
    } else {
        for (std::ptrdiff_t g = 0; g < count; ++g) column(static_cast<std::size_t>(g));
    }

    out.rank_range.reserve(m);
    for (const auto& row : out.ranks) {
        const auto [lo, hi] = std::minmax_element(row.begin(), row.end());
        out.rank_range.emplace_back(*lo, *hi);
    }
    return out;
}

} // namespace

RobustnessResult robustness_sweep(const LabelSet& set, const std::vector<WeightVector>& grid) {
    return sweep_impl(set, grid, true);
}

RobustnessResult robustness_sweep_serial(const LabelSet& set, const std::vector<WeightVector>& grid) {
    return sweep_impl(set, grid, false);
}

std::vector<TradeoffPoint> tradeoff_points(const LabelSet& set) {
    std::vector<TradeoffPoint> points;
    points.reserve(set.size());
    for (const auto& e : set.entries()) {
        points.push_back(TradeoffPoint{e.strategy_id, e.labels.mises_top_k_mean, e.labels.u3_range, false});
    }
    for (auto& p : points) {
        p.dominated = std::any_of(points.begin(), points.end(), [&](const TradeoffPoint& q) {
            return q.mises <= p.mises && q.u3 <= p.u3 && (q.mises < p.mises || q.u3 < p.u3);
        });
    }
    return points;
}

} // namespace scandiag
