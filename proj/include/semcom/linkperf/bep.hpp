#pragma once

#include <cmath>

#include "semcom/errors.hpp"
#include "semcom/fading/sinr.hpp"
#include "semcom/numerics/quadrature.hpp"
#include "semcom/random/philox.hpp"
#include "semcom/specfun/gamma.hpp"
#include "semcom/specfun/meijer.hpp"

namespace semcom::linkperf {

/// Modulation-specific shape parameters of the conditional bit-error curve
/// Gamma(lambda2, lambda1*gamma) / (2 Gamma(lambda2)).
struct ModulationParams {
    double lambda1 = 1.0;
    double lambda2 = 0.5;

    void validate() const {
        if (!(lambda1 > 0.0) || !(lambda2 > 0.0))
            throw domain_error("ModulationParams: lambda1, lambda2 must be > 0");
    }
};

/// Bit error probability conditioned on the instantaneous SINR; 0.5 at
/// gamma = 0, decaying to 0.
inline double conditional_bep(double gamma, const ModulationParams& mp) {
    mp.validate();
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw domain_error("conditional_bep: gamma must be >= 0 and finite");
    return 0.5 * specfun::gamma_q_regularized(mp.lambda2, mp.lambda1 * gamma);
}

/// Closed-form average BEP: one G^{1,4}_{4,2} evaluation. Shares the
/// validity region of the approximate CDF (trustworthy when sigma^2 is small
/// against the mean interference power); clamped to [0, 0.5].
inline double bep_closed(const fading::SinrParams& sp, const ModulationParams& mp) {
    sp.validate();
    mp.validate();
    const auto& f = sp.fading;
    const auto& ip = sp.interference;
    const double nk = ip.n_paths;
    const double z = ip.p_i * ip.eta / (mp.lambda1 * sp.lambda_k);
    const double log_pref = sp.geometry.noise_power / (ip.p_i * ip.eta) -
                            specfun::lgamma_fn(f.m_s) - specfun::lgamma_fn(f.m_f) -
                            specfun::lgamma_fn(nk) - specfun::lgamma_fn(mp.lambda2) -
                            0.6931471805599453;
    const double g = specfun::meijer_g(
        specfun::meijer_shape_1442(1.0 - f.m_s, 1.0 - nk, 1.0, 1.0 - mp.lambda2,
                                   f.m_f, 0.0),
        z);
    return std::clamp(std::exp(log_pref) * g, 0.0, 0.5);
}

/// Average BEP of the conditional curve over the quadrature SINR law (the
/// exact reference). Evaluated in the integrated-by-parts form
///   E = l1^l2 / (2 Gamma(l2)) * int x^{l2-1} e^{-l1 x} F(x) dx,
/// whose integrand is smooth at every transmit power (the density form is a
/// spike the integrator can miss when the SINR scale is far below 1/l1);
/// the substitution x = v^{1/l2} removes the endpoint singularity.
inline double bep_quad(const fading::SinrParams& sp, const ModulationParams& mp) {
    sp.validate();
    mp.validate();
    const double l1 = mp.lambda1, l2 = mp.lambda2;
    // weight e^{-l1 x} < 1e-20 past here, and F <= 1
    const double v_hi = std::pow(47.0 / l1, l2);
    auto integrand = [&](double v) {
        if (v <= 0.0) return 0.0;
        const double x = std::pow(v, 1.0 / l2);
        const double w = std::exp(-l1 * x);
        if (w < 1e-280) return 0.0;
        return w * fading::sinr_cdf_quad(x, sp);
    };
    const double integral =
        quad::integrate_or_throw(integrand, 0.0, v_hi, 1e-11, 1e-8, 8000);
    const double pref =
        std::exp(l2 * std::log(l1) - specfun::lgamma_fn(l2) - 0.6931471805599453) /
        l2;
    return std::clamp(pref * integral, 0.0, 0.5);
}

struct McEstimate {
    double value = 0.0;
    double stderr_ = 0.0;
    long samples = 0;
};

/// Average BEP by Monte Carlo over SINR draws (conditional BEP averaged, so
/// the estimator is already Rao-Blackwellized over bit flips).
inline McEstimate bep_mc(const fading::SinrParams& sp, const ModulationParams& mp,
                         long n_samples, rng::Stream& stream) {
    sp.validate();
    mp.validate();
    if (n_samples < 2) throw domain_error("bep_mc: n_samples must be >= 2");
    double sum = 0.0, sum2 = 0.0;
    for (long i = 0; i < n_samples; ++i) {
        const double e = conditional_bep(fading::sinr_sample(sp, stream), mp);
        sum += e;
        sum2 += e * e;
    }
    const double mean = sum / n_samples;
    const double var = std::max(0.0, sum2 / n_samples - mean * mean);
    return {mean, std::sqrt(var / n_samples), n_samples};
}

enum class BepMethod { closed, quad, mc };

/// Method-dispatched BEP; mc requires a stream and sample budget.
inline double bep(const fading::SinrParams& sp, const ModulationParams& mp,
                  BepMethod method, long mc_samples = 0,
                  rng::Stream* stream = nullptr) {
    switch (method) {
        case BepMethod::closed: return bep_closed(sp, mp);
        case BepMethod::quad: return bep_quad(sp, mp);
        case BepMethod::mc:
            if (!stream || mc_samples < 2)
                throw domain_error("bep: mc method needs a stream and sample budget");
            return bep_mc(sp, mp, mc_samples, *stream).value;
    }
    throw domain_error("bep: unknown method");
}

}  // namespace semcom::linkperf
