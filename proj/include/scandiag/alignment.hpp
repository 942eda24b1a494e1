#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scandiag/proxy_eval.hpp"
#include "scandiag/ranking.hpp"

namespace scandiag {

/// Sample Pearson correlation. Throws DegenerateStatistic when either vector is
/// constant, InvalidArgument on length mismatch, M < 2 or non-finite input.
double pearson(std::span<const double> x, std::span<const double> y);

/// Average ranks (1-based, ties share the mean rank).
std::vector<double> average_ranks(std::span<const double> values);

/// Pearson of average-ranked vectors.
double spearman(std::span<const double> x, std::span<const double> y);

struct PairwiseAgreement {
    double agreement = 0.0;
    double mismatch = 0.0;
};

/// Fraction of unordered pairs whose three-valued sign of difference matches
/// between x and y. agreement is computed as 1 - mismatch.
PairwiseAgreement pairwise_agreement(std::span<const double> x, std::span<const double> y);

enum class AlignmentTarget { mises, u3, peeq, composite };
inline constexpr std::array<AlignmentTarget, 4> kAllTargets = {
    AlignmentTarget::mises, AlignmentTarget::u3, AlignmentTarget::peeq, AlignmentTarget::composite};
std::string_view to_string(AlignmentTarget target);

struct AlignmentEntry {
    std::string metric_id;
    MetricGroup group = MetricGroup::v1;
    bool experimental = false;
    AlignmentTarget target = AlignmentTarget::composite;
    std::optional<double> pearson;   // empty when suppressed or undefined
    std::optional<double> spearman;
    double agreement = 0.0;
    double mismatch = 0.0;
    bool degenerate = false;         // proxy or target constant over the set
    bool sign_warning = false;       // pearson and spearman disagree in sign
};

struct BestProxy {
    AlignmentTarget target = AlignmentTarget::composite;
    std::optional<std::string> metric_id;  // empty when no metric qualifies
    std::optional<double> pearson;
    std::optional<double> spearman;
    double agreement = 0.0;
};

struct AlignmentReport {
    std::vector<std::string> strategy_ids;
    WeightVector weights;
    bool correlations_reported = false;  // M >= 3
    std::vector<AlignmentEntry> entries;  // metric-major, targets in kAllTargets order
    std::vector<BestProxy> best;          // one per target
    std::vector<std::string> warnings;
    std::string disclaimer;

    const AlignmentEntry& entry(std::string_view metric_id, AlignmentTarget target) const;
    const BestProxy& best_for(AlignmentTarget target) const;
};

/// Fixed caveat attached to every alignment report.
std::string_view alignment_disclaimer();

/// Proxy-vs-target statistics for every proxy metric against the three labels
/// and the composite score under `w`. The proxy matrix and label set must cover
/// the same strategy ids (InputMismatch lists the symmetric difference).
AlignmentReport alignment_report(const ProxyMatrix& proxies, const LabelSet& labels, const WeightVector& w);

} // namespace scandiag
