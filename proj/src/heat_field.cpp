#include "scandiag/heat_field.hpp"

#include <algorithm>
#include <cmath>

#include "scandiag/errors.hpp"

namespace scandiag {

HeatField::HeatField(std::span<const double> positions, double sigma, double decay)
    : positions_(positions), decay_(decay), heat_(positions.size(), 0.0) {
    if (!(sigma > 0.0) || !std::isfinite(sigma)) {
        throw InvalidArgument("heat deposit width must be positive and finite");
    }
    if (!(decay > 0.0 && decay <= 1.0)) {
        throw InvalidArgument("heat decay must lie in (0, 1]");
    }
    inv_two_sigma_sq_ = 1.0 / (2.0 * sigma * sigma);
}

double HeatField::deposit(int track) {
    const double x0 = positions_[static_cast<std::size_t>(track)];
    double peak = 0.0;
    for (std::size_t j = 0; j < heat_.size(); ++j) {
        const double d = positions_[j] - x0;
        heat_[j] += std::exp(-d * d * inv_two_sigma_sq_);
        peak = std::max(peak, heat_[j]);
    }
    for (double& h : heat_) h *= decay_;
    return peak;
}

} // namespace scandiag
