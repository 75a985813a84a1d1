#pragma once

#include <cmath>
#include <vector>

#include "semcom/fading/sinr.hpp"
#include "semcom/linkperf/bep.hpp"
#include "semcom/linkperf/tdp.hpp"
#include "semcom/numerics/pchip.hpp"

namespace semcom::linkperf {

/// Probability that a triplet sent with the given power survives: composes
/// the SINR model at that power, the average BEP and the block-error tail.
/// Zero power means every bit is a coin flip.
inline double triplet_delivery_prob(const fading::SinrParams& sp,
                                    const ModulationParams& mp,
                                    const TripletCoding& coding,
                                    double per_triplet_power,
                                    BepMethod method = BepMethod::quad) {
    coding.validate();
    if (!(per_triplet_power >= 0.0) || !std::isfinite(per_triplet_power))
        throw domain_error("triplet_delivery_prob: power must be >= 0 and finite");
    const double e = per_triplet_power == 0.0
                         ? 0.5
                         : bep(sp.with_power(per_triplet_power), mp, method);
    return 1.0 - tdp(e, coding);
}

/// Cached BEP-versus-power curve for one link: log-spaced quadrature (or
/// closed-form) nodes joined by a monotone cubic. Queries below the first
/// node blend linearly toward the zero-power limit of 0.5; queries above the
/// last node clamp (callers never exceed the total budget the table was
/// built for).
class BepTable {
public:
    BepTable() = default;

    BepTable(const fading::SinrParams& base, const ModulationParams& mp,
             double p_lo, double p_hi, int n_nodes = 160,
             BepMethod method = BepMethod::quad)
        : p_lo_(p_lo), p_hi_(p_hi) {
        base.validate();
        mp.validate();
        if (!(p_lo > 0.0) || !(p_hi > p_lo))
            throw domain_error("BepTable: requires 0 < p_lo < p_hi");
        if (n_nodes < 8) throw domain_error("BepTable: need >= 8 nodes");
        std::vector<double> lx(n_nodes), y(n_nodes);
        const double l0 = std::log(p_lo), l1 = std::log(p_hi);
        for (int i = 0; i < n_nodes; ++i) {
            lx[i] = l0 + (l1 - l0) * i / (n_nodes - 1);
            y[i] = bep(base.with_power(std::exp(lx[i])), mp, method);
        }
        e_lo_ = y.front();
        e_hi_ = y.back();
        curve_ = interp::Pchip(std::move(lx), std::move(y));
    }

    double bep_at(double power) const {
        if (!(power >= 0.0) || !std::isfinite(power))
            throw domain_error("BepTable: power must be >= 0 and finite");
        if (power == 0.0) return 0.5;
        if (power <= p_lo_) return 0.5 + (e_lo_ - 0.5) * (power / p_lo_);
        if (power >= p_hi_) return e_hi_;
        return std::clamp(curve_(std::log(power)), 0.0, 0.5);
    }

    double p_lo() const { return p_lo_; }
    double p_hi() const { return p_hi_; }

private:
    double p_lo_ = 0.0, p_hi_ = 0.0, e_lo_ = 0.5, e_hi_ = 0.0;
    interp::Pchip curve_;
};

}  // namespace semcom::linkperf
