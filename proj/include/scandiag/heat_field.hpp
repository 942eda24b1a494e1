#pragma once

#include <span>
#include <vector>

namespace scandiag {

/// Decayed track heat used by the smartscan generator and the heat-based proxies.
/// Each deposit adds exp(-(x_j - x_pick)^2 / (2 sigma^2)) to every track, then
/// the whole field is scaled by the decay factor.
class HeatField {
public:
    HeatField(std::span<const double> positions, double sigma, double decay);

    /// Adds the deposit for `track` and returns the field maximum before decay.
    double deposit(int track);

    const std::vector<double>& values() const noexcept { return heat_; }

private:
    std::span<const double> positions_;
    double inv_two_sigma_sq_;
    double decay_;
    std::vector<double> heat_;
};

} // namespace scandiag
