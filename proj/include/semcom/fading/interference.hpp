#pragma once

#include <cmath>

#include "semcom/errors.hpp"
#include "semcom/specfun/gamma.hpp"

namespace semcom::fading {

/// Aggregate co-channel interference: n_paths squared-Rayleigh terms, each of
/// mean power eta, transmitted at power p_i. The summed power Y is
/// Gamma(n_paths, eta)-distributed.
struct InterferenceParams {
    int n_paths = 2;     // N_I
    double eta = 1.0;    // E[h^2], linear
    double p_i = 1.0;    // interferer transmit power, W

    void validate() const {
        if (n_paths < 1) throw domain_error("InterferenceParams: n_paths must be >= 1");
        if (!(eta > 0.0) || !std::isfinite(eta))
            throw domain_error("InterferenceParams: eta must be > 0");
        if (!(p_i >= 0.0) || !std::isfinite(p_i))
            throw domain_error("InterferenceParams: p_i must be >= 0");
    }
};

/// Density of the summed interference power Y at y >= 0.
inline double interference_pdf(double y, const InterferenceParams& ip) {
    ip.validate();
    if (!(y >= 0.0) || !std::isfinite(y))
        throw domain_error("interference_pdf: y must be >= 0 and finite");
    const double k = ip.n_paths;
    if (y == 0.0) return ip.n_paths == 1 ? 1.0 / ip.eta : 0.0;
    return std::exp((k - 1.0) * std::log(y) - y / ip.eta - k * std::log(ip.eta) -
                    specfun::lgamma_fn(k));
}

/// Distribution function of Y: the lower regularized incomplete gamma (the
/// survival-form ratio normalizes to 1 at infinity only as its complement).
inline double interference_cdf(double y, const InterferenceParams& ip) {
    ip.validate();
    if (!std::isfinite(y)) throw domain_error("interference_cdf: y must be finite");
    if (y < 0.0) throw domain_error("interference_cdf: y must be >= 0");
    return specfun::gamma_p_regularized(static_cast<double>(ip.n_paths), y / ip.eta);
}

/// Upper truncation point for integrals against the Y density: the tail mass
/// beyond the returned point is below `tail`.
inline double interference_upper_bound(const InterferenceParams& ip,
                                       double tail = 1e-13) {
    ip.validate();
    const double k = ip.n_paths;
    double y = ip.eta * (k + 10.0 * std::sqrt(k) + 50.0);
    while (specfun::gamma_q_regularized(k, y / ip.eta) > tail) y *= 1.5;
    return y;
}

}  // namespace semcom::fading
