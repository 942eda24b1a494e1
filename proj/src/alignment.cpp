#include "scandiag/alignment.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "scandiag/errors.hpp"

namespace scandiag {

namespace {

void check_pair(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidArgument("score vectors differ in length");
    if (x.size() < 2) throw InvalidArgument("score vectors need at least 2 entries");
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw InvalidArgument("non-finite score value");
    }
}

bool is_constant(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double a) { return a == v.front(); });
}

int sign_of(double d) { return (d > 0.0) - (d < 0.0); }

double clamp_unit(double r) { return std::clamp(r, -1.0, 1.0); }

} // namespace

double pearson(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    if (is_constant(x) || is_constant(y)) throw DegenerateStatistic("correlation undefined for a constant vector");
    const auto n = static_cast<double>(x.size());
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    return clamp_unit(sxy / std::sqrt(sxx * syy));
}

std::vector<double> average_ranks(std::span<const double> values) {
    std::vector<std::size_t> idx(values.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(values.size());
    for (std::size_t i = 0; i < idx.size();) {
        std::size_t j = i;
        while (j + 1 < idx.size() && values[idx[j + 1]] == values[idx[i]]) ++j;
        // positions i..j (0-based) share ranks i+1..j+1
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    const std::vector<double> rx = average_ranks(x);
    const std::vector<double> ry = average_ranks(y);
    return pearson(rx, ry);
}

PairwiseAgreement pairwise_agreement(std::span<const double> x, std::span<const double> y) {
    check_pair(x, y);
    std::size_t mismatched = 0;
    std::size_t pairs = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        for (std::size_t j = i + 1; j < x.size(); ++j, ++pairs) {
            if (sign_of(x[i] - x[j]) != sign_of(y[i] - y[j])) ++mismatched;
        }
    }
    const double mismatch = static_cast<double>(mismatched) / static_cast<double>(pairs);
    return PairwiseAgreement{1.0 - mismatch, mismatch};
}

std::string_view to_string(AlignmentTarget target) {
    switch (target) {
    case AlignmentTarget::mises: return "mises";
    case AlignmentTarget::u3: return "u3";
    case AlignmentTarget::peeq: return "peeq";
    case AlignmentTarget::composite: return "composite";
    }
    return "unknown";
}

std::string_view alignment_disclaimer() {
    return "All alignment statistics are qualitative and exploratory due to the small evaluated "
           "strategy set. Composite scores use per-run min-max normalization and the configured "
           "weights, so absolute composite values are not comparable with externally published "
           "scores; only rank properties are. Risk-candidate proxy metrics are experimental.";
}

const AlignmentEntry& AlignmentReport::entry(std::string_view metric_id, AlignmentTarget target) const {
    for (const auto& e : entries) {
        if (e.metric_id == metric_id && e.target == target) return e;
    }
    throw InvalidArgument("no alignment entry for metric '" + std::string(metric_id) + "'");
}

const BestProxy& AlignmentReport::best_for(AlignmentTarget target) const {
    for (const auto& b : best) {
        if (b.target == target) return b;
    }
    throw InvalidArgument("no best-proxy entry for target");
}

AlignmentReport alignment_report(const ProxyMatrix& proxies, const LabelSet& labels, const WeightVector& w) {
    w.validate();
    const std::set<std::string> proxy_ids(proxies.strategy_ids.begin(), proxies.strategy_ids.end());
    const std::vector<std::string> label_id_list = labels.ids();
    const std::set<std::string> label_ids(label_id_list.begin(), label_id_list.end());
    if (proxy_ids != label_ids) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(proxy_ids.begin(), proxy_ids.end(), label_ids.begin(), label_ids.end(),
                                      std::back_inserter(diff));
        std::string msg = "proxy matrix and labels cover different strategies:";
        for (const auto& id : diff) msg += " " + id;
        throw InputMismatch(msg, diff);
    }

    const LabelSet aligned = labels.select(proxies.strategy_ids);
    const std::size_t m = aligned.size();
    if (m < 2) throw InvalidArgument("alignment needs at least 2 strategies");

    AlignmentReport report;
    report.strategy_ids = proxies.strategy_ids;
    report.weights = w;
    report.correlations_reported = m >= 3;
    report.disclaimer = std::string(alignment_disclaimer());
    if (!report.correlations_reported) {
        report.warnings.push_back("fewer than 3 strategies: correlations suppressed, agreement only");
    }

    const NormalizedLabels normalized = normalize_labels(aligned);
    std::array<std::vector<double>, 4> targets;
    for (const auto& e : aligned.entries()) {
        targets[0].push_back(e.labels.mises_top_k_mean);
        targets[1].push_back(e.labels.u3_range);
        targets[2].push_back(e.labels.peeq_fraction);
    }
    for (const auto& tri : normalized.values) targets[3].push_back(composite_score(tri, w));

    for (std::size_t t = 0; t < kAllTargets.size(); ++t) {
        if (is_constant(targets[t])) {
            report.warnings.push_back("target " + std::string(to_string(kAllTargets[t])) +
                                      " is constant over the set; correlations undefined");
        }
    }

    for (const auto& info : proxy_metric_catalog()) {
        const std::vector<double> column = proxies.column(info.id);
        const bool proxy_constant = is_constant(column);
        if (proxy_constant) {
            report.warnings.push_back("proxy metric " + std::string(info.id) +
                                      " is constant over the set; excluded from best-proxy selection");
        }
        for (std::size_t t = 0; t < kAllTargets.size(); ++t) {
            AlignmentEntry e;
            e.metric_id = std::string(info.id);
            e.group = info.group;
            e.experimental = info.experimental;
            e.target = kAllTargets[t];
            const PairwiseAgreement pa = pairwise_agreement(column, targets[t]);
            e.agreement = pa.agreement;
            e.mismatch = pa.mismatch;
            e.degenerate = proxy_constant || is_constant(targets[t]);
            if (report.correlations_reported && !e.degenerate) {
                e.pearson = pearson(column, targets[t]);
                e.spearman = spearman(column, targets[t]);
                e.sign_warning = (*e.pearson) * (*e.spearman) < 0.0;
            }
            report.entries.push_back(std::move(e));
        }
    }

    for (AlignmentTarget target : kAllTargets) {
        BestProxy best;
        best.target = target;
        const AlignmentEntry* pick = nullptr;
        for (const auto& e : report.entries) {
            if (e.target != target || e.degenerate || !e.spearman) continue;
            if (pick == nullptr) {
                pick = &e;
                continue;
            }
            const double s = std::abs(*e.spearman);
            const double ps = std::abs(*pick->spearman);
            const double r = std::abs(*e.pearson);
            const double pr = std::abs(*pick->pearson);
            if (s > ps || (s == ps && (r > pr || (r == pr && e.metric_id < pick->metric_id)))) pick = &e;
        }
        if (pick != nullptr) {
            best.metric_id = pick->metric_id;
            best.pearson = pick->pearson;
            best.spearman = pick->spearman;
            best.agreement = pick->agreement;
        }
        report.best.push_back(best);
    }
    return report;
}

} // namespace scandiag
