#pragma once

#include <cmath>
#include <sstream>

#include "semcom/errors.hpp"
#include "semcom/random/philox.hpp"
#include "semcom/specfun/gamma.hpp"
#include "semcom/specfun/hyp2f1.hpp"

namespace semcom::fading {

/// Fisher-Snedecor F composite fading: Nakagami-m multipath (m_f) over
/// inverse-Nakagami shadowing (m_s), mean channel power z_bar (linear scale).
struct FadingParams {
    double m_f = 2.0;    // multipath fading parameter
    double m_s = 2.0;    // shadowing parameter, > 1 for a finite mean
    double z_bar = 1.0;  // mean power, linear

    void validate() const {
        if (!(m_f > 0.0) || !std::isfinite(m_f))
            throw domain_error("FadingParams: m_f must be > 0");
        if (!(m_s > 1.0) || !std::isfinite(m_s))
            throw domain_error("FadingParams: m_s must be > 1");
        if (!(z_bar > 0.0) || !std::isfinite(z_bar))
            throw domain_error("FadingParams: z_bar must be > 0");
    }
};

/// dB -> linear conversion for power-like quantities.
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

/// Density of the F channel power at z >= 0.
inline double f_pdf(double z, const FadingParams& fp) {
    fp.validate();
    if (!(z >= 0.0) || !std::isfinite(z))
        throw domain_error("f_pdf: z must be >= 0 and finite");
    const double scale = (fp.m_s - 1.0) * fp.z_bar;
    if (z == 0.0) {
        if (fp.m_f > 1.0) return 0.0;
        if (fp.m_f == 1.0)
            return 1.0 / (specfun::beta_fn(1.0, fp.m_s) * scale);
        return std::numeric_limits<double>::infinity();
    }
    const double log_pdf = fp.m_f * std::log(fp.m_f) + fp.m_s * std::log(scale) +
                           (fp.m_f - 1.0) * std::log(z) -
                           specfun::log_beta(fp.m_f, fp.m_s) -
                           (fp.m_f + fp.m_s) * std::log(fp.m_f * z + scale);
    return std::exp(log_pdf);
}

/// Distribution function of the F channel power. Evaluated through the
/// hypergeometric form; the complementary branch keeps the transformed
/// series argument below 1/2 for any z.
inline double f_cdf(double z, const FadingParams& fp) {
    fp.validate();
    if (!std::isfinite(z)) throw domain_error("f_cdf: z must be finite");
    if (z <= 0.0) return 0.0;
    const double u = fp.m_f * z / ((fp.m_s - 1.0) * fp.z_bar);
    if (u <= 1.0) {
        const double lg = fp.m_f * std::log(u) - std::log(fp.m_f) -
                          specfun::log_beta(fp.m_f, fp.m_s);
        const double f =
            specfun::gauss_2f1(fp.m_f, fp.m_f + fp.m_s, fp.m_f + 1.0, -u);
        return std::min(1.0, std::exp(lg) * f);
    }
    const double v = 1.0 / u;
    const double lg = fp.m_s * std::log(v) - std::log(fp.m_s) -
                      specfun::log_beta(fp.m_f, fp.m_s);
    const double f = specfun::gauss_2f1(fp.m_s, fp.m_f + fp.m_s, fp.m_s + 1.0, -v);
    return std::max(0.0, 1.0 - std::exp(lg) * f);
}

/// One channel-power draw: Z = z_bar (m_s - 1) G1 / (m_f G2) with
/// G1 ~ Gamma(m_f), G2 ~ Gamma(m_s).
inline double f_sample(const FadingParams& fp, rng::Stream& stream) {
    fp.validate();
    const double g1 = stream.gamma(fp.m_f);
    const double g2 = stream.gamma(fp.m_s);
    return fp.z_bar * (fp.m_s - 1.0) * g1 / (fp.m_f * g2);
}

/// Single-F equivalent of the sum of n_antennas i.i.d. F variables under
/// common shadowing: the Gamma numerators add, the shared inverse-Nakagami
/// denominator is untouched. Exact in that regime, mean-preserving always.
inline FadingParams sum_f_equivalent(const FadingParams& fp, int n_antennas) {
    fp.validate();
    if (n_antennas < 1)
        throw domain_error("sum_f_equivalent: n_antennas must be >= 1");
    return FadingParams{fp.m_f * n_antennas, fp.m_s, fp.z_bar * n_antennas};
}

}  // namespace semcom::fading
