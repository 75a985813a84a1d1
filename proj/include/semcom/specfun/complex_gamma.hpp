#pragma once

#include <cmath>
#include <complex>

namespace semcom::specfun {

namespace detail {

using cplx = std::complex<double>;

// log(sin(pi z)) stable for large |Im z|; the branch is immaterial for
// callers that only exponentiate sums of log-gammas.
inline cplx log_sin_pi(cplx z) {
    const cplx w = 3.14159265358979323846 * z;
    if (w.imag() > 20.0) {
        // sin w = -e^{-iw} (1 - e^{2iw}) / (2i), |e^{2iw}| << 1
        const cplx i(0.0, 1.0);
        return -i * w + std::log(1.0 - std::exp(2.0 * i * w)) +
               cplx(-0.6931471805599453, 1.5707963267948966);  // log(i/2)
    }
    if (w.imag() < -20.0) {
        const cplx i(0.0, 1.0);
        const cplx wc = std::conj(w);
        const cplx r = -i * wc + std::log(1.0 - std::exp(2.0 * i * wc)) +
                       cplx(-0.6931471805599453, 1.5707963267948966);
        return std::conj(r);
    }
    return std::log(std::sin(w));
}

}  // namespace detail

/// Principal-ish log Gamma for complex argument: Stirling series after
/// shifting Re(z) above 12, reflection for Re(z) < 0.5. Accurate to ~1e-15
/// relative; additive 2*pi*i ambiguities cancel when sums are exponentiated.
inline std::complex<double> log_gamma(std::complex<double> z) {
    using detail::cplx;
    static constexpr double kHalfLog2Pi = 0.91893853320467274178;
    static constexpr double kStirling[8] = {
        1.0 / 12.0,        -1.0 / 360.0,       1.0 / 1260.0,
        -1.0 / 1680.0,     1.0 / 1188.0,       -691.0 / 360360.0,
        1.0 / 156.0,       -3617.0 / 122400.0};

    if (z.real() < 0.5) {
        // Reflection: log G(z) = log pi - log sin(pi z) - log G(1 - z)
        return cplx(1.1447298858494001741, 0.0) - detail::log_sin_pi(z) -
               log_gamma(1.0 - z);
    }
    cplx shift(0.0, 0.0);
    while (z.real() < 12.0) {
        shift += std::log(z);
        z += 1.0;
    }
    const cplx inv = 1.0 / z;
    const cplx inv2 = inv * inv;
    cplx series(0.0, 0.0);
    cplx p = inv;
    for (double c : kStirling) {
        series += c * p;
        p *= inv2;
    }
    return (z - 0.5) * std::log(z) - z + kHalfLog2Pi + series - shift;
}

}  // namespace semcom::specfun
