#pragma once

#include <algorithm>
#include <cmath>

#include "semcom/errors.hpp"
#include "semcom/fading/fisher_f.hpp"
#include "semcom/fading/interference.hpp"
#include "semcom/numerics/quadrature.hpp"
#include "semcom/random/philox.hpp"
#include "semcom/specfun/meijer.hpp"

namespace semcom::fading {

struct LinkGeometry {
    double distance = 10.0;       // m
    double path_loss_exp = 2.0;   // alpha
    int n_antennas = 1;           // N_T
    double noise_power = 1.0;     // sigma^2, W

    void validate() const {
        if (!(distance > 0.0)) throw domain_error("LinkGeometry: distance must be > 0");
        if (!(path_loss_exp > 0.0))
            throw domain_error("LinkGeometry: path_loss_exp must be > 0");
        if (n_antennas < 1) throw domain_error("LinkGeometry: n_antennas must be >= 1");
        if (!(noise_power > 0.0))
            throw domain_error("LinkGeometry: noise_power must be > 0");
    }
};

/// Everything needed to evaluate the SINR distribution of one link. The
/// fading field is the *reduced* (post sum_f_equivalent) description of the
/// beamformed channel power; lambda_k is the derived scale
/// p_tx D^{-alpha} (m_s - 1) z_bar / m_f.
struct SinrParams {
    FadingParams fading;
    LinkGeometry geometry;
    InterferenceParams interference;
    double p_tx = 1.0;
    double lambda_k = 0.0;

    static double lambda_of(const FadingParams& f, const LinkGeometry& g,
                            double p_tx) {
        return p_tx * std::pow(g.distance, -g.path_loss_exp) * (f.m_s - 1.0) *
               f.z_bar / f.m_f;
    }

    /// Builds from an unreduced per-antenna fading description, applying the
    /// sum-of-F reduction for the geometry's antenna count.
    static SinrParams make(const FadingParams& per_antenna, const LinkGeometry& g,
                           const InterferenceParams& ip, double p_tx) {
        g.validate();
        ip.validate();
        if (!(p_tx > 0.0) || !std::isfinite(p_tx))
            throw domain_error("SinrParams: p_tx must be > 0");
        const FadingParams reduced = sum_f_equivalent(per_antenna, g.n_antennas);
        return SinrParams{reduced, g, ip, p_tx, lambda_of(reduced, g, p_tx)};
    }

    /// Same link at a different transmit power (lambda_k recomputed).
    SinrParams with_power(double p) const {
        if (!(p > 0.0) || !std::isfinite(p))
            throw domain_error("SinrParams: p_tx must be > 0");
        return SinrParams{fading, geometry, interference, p,
                          lambda_of(fading, geometry, p)};
    }

    void validate() const {
        fading.validate();
        geometry.validate();
        interference.validate();
        if (!(p_tx > 0.0)) throw domain_error("SinrParams: p_tx must be > 0");
        const double l = lambda_of(fading, geometry, p_tx);
        if (std::fabs(l - lambda_k) > 1e-12 * std::fabs(l))
            throw domain_error("SinrParams: lambda_k inconsistent with constituents");
    }

    double signal_scale() const {
        return p_tx * std::pow(geometry.distance, -geometry.path_loss_exp);
    }
};

namespace detail {

inline double gamma_pdf(double y, double shape, double scale) {
    if (y < 0.0) return 0.0;
    if (y == 0.0) return shape == 1.0 ? 1.0 / scale : (shape > 1.0 ? 0.0 : HUGE_VAL);
    return std::exp((shape - 1.0) * std::log(y) - y / scale -
                    shape * std::log(scale) - specfun::lgamma_fn(shape));
}

}  // namespace detail

/// SINR density by adaptive quadrature over the interference power. This is
/// the exact reference that every closed-form approximation is checked
/// against; truncated tail mass < 1e-13.
inline double sinr_pdf_quad(double gamma, const SinrParams& sp) {
    sp.validate();
    if (!(gamma >= 0.0) || !std::isfinite(gamma))
        throw domain_error("sinr_pdf_quad: gamma must be >= 0 and finite");
    if (gamma == 0.0)
        return sp.fading.m_f > 1.0
                   ? 0.0
                   : f_pdf(0.0, sp.fading) * sp.geometry.noise_power / sp.signal_scale();
    const double a = sp.signal_scale();
    const double s2 = sp.geometry.noise_power;
    const InterferenceParams& ip = sp.interference;
    if (ip.p_i == 0.0) return f_pdf(gamma * s2 / a, sp.fading) * s2 / a;
    const double nk = ip.n_paths;
    const double y_hi = interference_upper_bound(ip);
    auto integrand = [&](double y) {
        const double x = s2 + ip.p_i * y;
        return (x / a) * f_pdf(gamma * x / a, sp.fading) *
               detail::gamma_pdf(y, nk, ip.eta);
    };
    return quad::integrate_or_throw(integrand, 0.0, y_hi, 1e-10, 1e-9);
}

/// SINR distribution function by quadrature (exact reference).
inline double sinr_cdf_quad(double gamma, const SinrParams& sp) {
    sp.validate();
    if (!std::isfinite(gamma)) throw domain_error("sinr_cdf_quad: gamma must be finite");
    if (gamma <= 0.0) return 0.0;
    const double a = sp.signal_scale();
    const double s2 = sp.geometry.noise_power;
    const InterferenceParams& ip = sp.interference;
    if (ip.p_i == 0.0) return f_cdf(gamma * s2 / a, sp.fading);
    const double nk = ip.n_paths;
    const double y_hi = interference_upper_bound(ip);
    auto integrand = [&](double y) {
        const double x = s2 + ip.p_i * y;
        return f_cdf(gamma * x / a, sp.fading) * detail::gamma_pdf(y, nk, ip.eta);
    };
    const double v = quad::integrate_or_throw(integrand, 0.0, y_hi, 1e-10, 1e-9);
    return std::clamp(v, 0.0, 1.0);
}

/// Result of the approximate closed-form CDF together with its validity
/// indicator (the Meijer-G argument; the approximation was derived for small
/// values of it).
struct AccurateCdf {
    double value = 0.0;
    double rho = 0.0;
};

/// Approximate closed-form SINR CDF: a single G^{1,3}_{3,2} evaluation.
/// Clamped to [0, 1]; trust degrades as rho grows.
inline AccurateCdf sinr_cdf_accurate(double gamma, const SinrParams& sp) {
    sp.validate();
    if (!std::isfinite(gamma))
        throw domain_error("sinr_cdf_accurate: gamma must be finite");
    if (gamma <= 0.0) return {0.0, 0.0};
    const auto& f = sp.fading;
    const auto& ip = sp.interference;
    const double z = gamma * ip.p_i * ip.eta / sp.lambda_k;
    const double log_pref = sp.geometry.noise_power / (ip.p_i * ip.eta) -
                            specfun::lgamma_fn(static_cast<double>(ip.n_paths)) -
                            specfun::lgamma_fn(f.m_s) - specfun::lgamma_fn(f.m_f);
    const double g = specfun::meijer_g(
        specfun::meijer_shape_1332(1.0 - f.m_s, 1.0 - ip.n_paths, 1.0, f.m_f, 0.0),
        z);
    return {std::clamp(std::exp(log_pref) * g, 0.0, 1.0), z};
}

/// High transmit-power asymptote of the SINR CDF: a pure power law of slope
/// m_f. Returned unclamped; it exceeds 1 outside its validity region.
inline double sinr_cdf_asymptotic(double gamma, const SinrParams& sp) {
    sp.validate();
    if (!std::isfinite(gamma))
        throw domain_error("sinr_cdf_asymptotic: gamma must be finite");
    if (gamma <= 0.0) return 0.0;
    const auto& f = sp.fading;
    const auto& ip = sp.interference;
    const double z = gamma * ip.p_i * ip.eta / sp.lambda_k;
    const double nk = ip.n_paths;
    return std::exp(specfun::lgamma_fn(f.m_f + f.m_s) +
                    specfun::lgamma_fn(nk + f.m_f) - specfun::lgamma_fn(nk) -
                    specfun::lgamma_fn(f.m_s) - specfun::lgamma_fn(f.m_f + 1.0) +
                    sp.geometry.noise_power / (ip.p_i * ip.eta) +
                    f.m_f * std::log(z));
}

/// Small-rho approximation of the integral
///   I_A = int_a^inf x^b (x-a)^c exp(-(x-a)/d) 2F1(alpha,beta;eps;-rho x) dx
/// as a G^{1,3}_{3,2}. Exposed standalone so the approximation itself is
/// testable against brute-force quadrature.
inline double lemma_ia_approx(double a, double b, double c, double d,
                              double alpha, double beta, double eps, double rho) {
    if (!(d > 0.0) || !(rho > 0.0))
        throw domain_error("lemma_ia_approx: requires d > 0 and rho > 0");
    if (!(alpha > 0.0) || !(beta > 0.0) || !(eps > 0.0))
        throw domain_error("lemma_ia_approx: requires alpha, beta, eps > 0");
    if (!(b + c + 1.0 > 0.0))
        throw domain_error("lemma_ia_approx: requires b + c + 1 > 0");
    const double log_pref = a / d + specfun::lgamma_fn(eps) +
                            (b + c + 1.0) * std::log(d) -
                            specfun::lgamma_fn(alpha) - specfun::lgamma_fn(beta);
    const double g = specfun::meijer_g(
        specfun::meijer_shape_1332(1.0 - beta, -b - c, 1.0 - alpha, 0.0, 1.0 - eps),
        d * rho);
    return std::exp(log_pref) * g;
}

/// One SINR draw: gamma = P D^{-alpha} Z / (sigma^2 + P_I Y).
inline double sinr_sample(const SinrParams& sp, rng::Stream& stream) {
    sp.validate();
    const double z = f_sample(sp.fading, stream);
    const double y = sp.interference.eta * stream.gamma(sp.interference.n_paths);
    return sp.signal_scale() * z /
           (sp.geometry.noise_power + sp.interference.p_i * y);
}

}  // namespace semcom::fading
