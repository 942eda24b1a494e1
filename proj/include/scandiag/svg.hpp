#pragma once

#include <string>
#include <vector>

#include "scandiag/alignment.hpp"
#include "scandiag/ranking.hpp"

namespace scandiag::svg {

/// Mises vs U3 scatter with strategy labels and the Pareto front polyline.
std::string tradeoff_chart(const std::vector<TradeoffPoint>& points);

/// Strategy x weighting rank heatmap.
std::string robustness_heatmap(const RobustnessResult& sweep);

/// Pairwise agreement bars, one group per proxy metric, one bar per target.
std::string agreement_bars(const AlignmentReport& report);

} // namespace scandiag::svg
