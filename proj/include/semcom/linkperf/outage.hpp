#pragma once

#include <cmath>

#include "semcom/errors.hpp"
#include "semcom/fading/sinr.hpp"
#include "semcom/linkperf/bep.hpp"

namespace semcom::linkperf {

enum class OutageMethod { quad, accurate, asymptotic, mc };

/// Outage probability P(SINR < gamma_th) by the chosen evaluation route.
/// The asymptotic route may exceed 1 outside the high-power regime and is
/// returned as computed.
inline double outage_probability(double gamma_th, const fading::SinrParams& sp,
                                 OutageMethod method, long mc_samples = 0,
                                 rng::Stream* stream = nullptr) {
    if (!(gamma_th > 0.0) || !std::isfinite(gamma_th))
        throw domain_error("outage_probability: gamma_th must be > 0");
    switch (method) {
        case OutageMethod::quad: return fading::sinr_cdf_quad(gamma_th, sp);
        case OutageMethod::accurate:
            return fading::sinr_cdf_accurate(gamma_th, sp).value;
        case OutageMethod::asymptotic:
            return fading::sinr_cdf_asymptotic(gamma_th, sp);
        case OutageMethod::mc: break;
    }
    if (!stream || mc_samples < 2)
        throw domain_error("outage_probability: mc method needs a stream and budget");
    sp.validate();
    long hits = 0;
    for (long i = 0; i < mc_samples; ++i)
        hits += fading::sinr_sample(sp, *stream) < gamma_th;
    return static_cast<double>(hits) / static_cast<double>(mc_samples);
}

/// MC outage with its binomial standard error.
inline McEstimate outage_mc(double gamma_th, const fading::SinrParams& sp,
                            long n_samples, rng::Stream& stream) {
    if (!(gamma_th > 0.0) || !std::isfinite(gamma_th))
        throw domain_error("outage_mc: gamma_th must be > 0");
    if (n_samples < 2) throw domain_error("outage_mc: n_samples must be >= 2");
    sp.validate();
    long hits = 0;
    for (long i = 0; i < n_samples; ++i)
        hits += fading::sinr_sample(sp, stream) < gamma_th;
    const double p = static_cast<double>(hits) / static_cast<double>(n_samples);
    return {p, std::sqrt(p * (1.0 - p) / n_samples), n_samples};
}

}  // namespace semcom::linkperf
