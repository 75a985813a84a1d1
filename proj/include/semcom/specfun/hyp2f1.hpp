#pragma once

#include <cmath>
#include <sstream>

#include "semcom/errors.hpp"

namespace semcom::specfun {

namespace detail {

inline bool is_nonpositive_integer(double x) {
    return x <= 0.0 && x == std::floor(x);
}

// Plain power series; caller guarantees |z| < 1 (or a terminating series).
inline double hyp2f1_series(double a, double b, double c, double z) {
    double term = 1.0, sum = 1.0;
    for (int n = 0; n < 100000; ++n) {
        term *= (a + n) * (b + n) / ((c + n) * (n + 1.0)) * z;
        sum += term;
        if (term == 0.0) return sum;  // terminating polynomial case
        if (std::fabs(term) < std::fabs(sum) * 1e-15 && n > 2) return sum;
    }
    std::ostringstream os;
    os << "a=" << a << " b=" << b << " c=" << c << " z=" << z
       << " partial=" << sum << " last_term=" << term;
    throw numeric_error("gauss_2f1: series did not converge", os.str());
}

}  // namespace detail

/// Gauss hypergeometric 2F1(a, b; c; z) for real parameters and z < 1.
/// Negative arguments are mapped to [0, 1) by the Pfaff transformation before
/// summing the series; truncation when a term falls below 1e-15 of the sum.
inline double gauss_2f1(double a, double b, double c, double z) {
    if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(c) ||
        !std::isfinite(z))
        throw domain_error("gauss_2f1: non-finite argument");
    if (detail::is_nonpositive_integer(c))
        throw domain_error("gauss_2f1: c must not be a non-positive integer");
    if (z >= 1.0)
        throw domain_error("gauss_2f1: requires z < 1");
    if (z == 0.0) return 1.0;
    if (z < 0.0) {
        // Pfaff: 2F1(a,b;c;z) = (1-z)^(-a) 2F1(a, c-b; c; z/(z-1)).
        const double w = z / (z - 1.0);  // in (0, 1)
        return std::pow(1.0 - z, -a) * detail::hyp2f1_series(a, c - b, c, w);
    }
    return detail::hyp2f1_series(a, b, c, z);
}

}  // namespace semcom::specfun
