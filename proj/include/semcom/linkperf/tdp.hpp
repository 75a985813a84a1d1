#pragma once

#include <cmath>

#include "semcom/errors.hpp"
#include "semcom/specfun/gamma.hpp"

namespace semcom::linkperf {

/// Physical-layer framing of one triplet: d_t coded bits, of which up to d_e
/// bit errors are correctable.
struct TripletCoding {
    int d_t = 256;
    int d_e = 8;

    void validate() const {
        if (d_t < 1 || d_t > 4096)
            throw domain_error("TripletCoding: d_t must be in [1, 4096]");
        if (d_e < 0 || d_e >= d_t)
            throw domain_error("TripletCoding: requires 0 <= d_e < d_t");
    }
};

enum class TdpConvention {
    binomial,  // standard block-error tail with C(d_t, j) weights
    literal    // the coefficient-free printed sum, for faithfulness checks
};

/// Triplet drop probability: chance that more than d_e of d_t bits flip when
/// each flips independently with probability e. Terms are assembled in the
/// log domain so d_t up to 4096 stays stable.
inline double tdp(double e, const TripletCoding& coding,
                  TdpConvention conv = TdpConvention::binomial) {
    coding.validate();
    if (!(e >= 0.0 && e <= 1.0))
        throw domain_error("tdp: bit error probability must be in [0, 1]");
    if (e == 0.0) return 0.0;
    if (e == 1.0) return 1.0;  // every bit wrong, d_e < d_t cannot correct
    const double log_e = std::log(e);
    const double log_1me = std::log1p(-e);
    double sum = 0.0;
    for (int j = coding.d_e + 1; j <= coding.d_t; ++j) {
        double lt = j * log_e + (coding.d_t - j) * log_1me;
        if (conv == TdpConvention::binomial)
            lt += specfun::log_choose(coding.d_t, j);
        sum += std::exp(lt);
    }
    return conv == TdpConvention::binomial ? std::min(sum, 1.0) : sum;
}

}  // namespace semcom::linkperf
