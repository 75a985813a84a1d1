#pragma once

#include <cmath>
#include <limits>
#include <sstream>

#include "semcom/errors.hpp"

namespace semcom::specfun {

namespace detail {

inline void require_positive(double a, const char* name) {
    if (!(a > 0.0) || !std::isfinite(a)) {
        std::ostringstream os;
        os << name << " must be positive and finite, got " << a;
        throw domain_error(os.str());
    }
}

}  // namespace detail

/// Gamma function for positive real argument. Overflows to +inf past
/// a ~ 171.6; use lgamma_fn in that regime.
inline double gamma_fn(double a) {
    detail::require_positive(a, "gamma_fn: a");
    return std::tgamma(a);
}

/// log Gamma(a), a > 0.
inline double lgamma_fn(double a) {
    detail::require_positive(a, "lgamma_fn: a");
    return std::lgamma(a);
}

/// Digamma (psi) function for x > 0.
inline double digamma(double x) {
    detail::require_positive(x, "digamma: x");
    double acc = 0.0;
    while (x < 10.0) {
        acc -= 1.0 / x;
        x += 1.0;
    }
    const double inv = 1.0 / x, inv2 = inv * inv;
    // Stirling expansion; B_2..B_12 terms.
    double s = std::log(x) - 0.5 * inv;
    double p = inv2;
    s -= p * (1.0 / 12.0);
    p *= inv2;
    s += p * (1.0 / 120.0);
    p *= inv2;
    s -= p * (1.0 / 252.0);
    p *= inv2;
    s += p * (1.0 / 240.0);
    p *= inv2;
    s -= p * (1.0 / 132.0);
    return acc + s;
}

/// Inverse digamma: the x > 0 with psi(x) = y. Bisection; psi is monotone.
inline double digamma_inverse(double y) {
    double lo = 1e-12, hi = 2.0;
    while (digamma(hi) < y) hi *= 2.0;
    while (digamma(lo) > y) lo *= 0.5;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * (1.0 + hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        (digamma(mid) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

namespace detail {

// Regularized lower incomplete gamma P(a,x) by series (valid x < a+1).
inline double gamma_p_series(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < 10000; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * 1e-17) break;
    }
    return sum * std::exp(a * std::log(x) - x - std::lgamma(a));
}

// Regularized upper incomplete gamma Q(a,x) by continued fraction
// (valid x >= a+1), modified Lentz.
inline double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < 10000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < 1e-16) break;
    }
    return h * std::exp(a * std::log(x) - x - std::lgamma(a));
}

}  // namespace detail

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x) / Gamma(a).
inline double gamma_q_regularized(double a, double x) {
    detail::require_positive(a, "gamma_q_regularized: a");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw domain_error("gamma_q_regularized: x must be >= 0 and finite");
    if (x == 0.0) return 1.0;
    if (x < a + 1.0) return 1.0 - detail::gamma_p_series(a, x);
    return detail::gamma_q_cf(a, x);
}

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
inline double gamma_p_regularized(double a, double x) {
    detail::require_positive(a, "gamma_p_regularized: a");
    if (!(x >= 0.0) || !std::isfinite(x))
        throw domain_error("gamma_p_regularized: x must be >= 0 and finite");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return detail::gamma_p_series(a, x);
    return 1.0 - detail::gamma_q_cf(a, x);
}

/// Upper incomplete gamma Gamma(a, x). Monotone decreasing in x with
/// Gamma(a, 0) = Gamma(a).
inline double upper_incomplete_gamma(double a, double x) {
    return gamma_q_regularized(a, x) * std::tgamma(a);
}

/// Beta function, computed in the log domain.
inline double beta_fn(double a, double b) {
    detail::require_positive(a, "beta_fn: a");
    detail::require_positive(b, "beta_fn: b");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

inline double log_beta(double a, double b) {
    detail::require_positive(a, "log_beta: a");
    detail::require_positive(b, "log_beta: b");
    return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

/// log C(n, k) via log-gamma.
inline double log_choose(long n, long k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

}  // namespace semcom::specfun
