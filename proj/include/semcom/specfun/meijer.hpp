#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>
#include <vector>

#include "semcom/errors.hpp"
#include "semcom/numerics/quadrature.hpp"
#include "semcom/specfun/complex_gamma.hpp"
#include "semcom/specfun/gamma.hpp"

namespace semcom::specfun {

/// Order and parameters of a Meijer G^{m,n}_{p,q} function. Only the shapes
/// that appear in the closed-form channel expressions are supported:
/// (1,0,0,1), (1,3,3,2) and (1,4,4,2).
struct MeijerShape {
    int m = 0, n = 0, p = 0, q = 0;
    std::vector<double> a;  // p numerator parameters
    std::vector<double> b;  // q denominator parameters

    void validate() const {
        if (m < 0 || n < 0 || p < 0 || q < 0 || m > q || n > p)
            throw parameter_error("MeijerShape: requires 0 <= m <= q, 0 <= n <= p");
        if (static_cast<int>(a.size()) != p || static_cast<int>(b.size()) != q)
            throw parameter_error("MeijerShape: parameter list sizes must match (p, q)");
        const bool supported = (m == 1 && n == 0 && p == 0 && q == 1) ||
                               (m == 1 && n == 3 && p == 3 && q == 2) ||
                               (m == 1 && n == 4 && p == 4 && q == 2);
        if (!supported) {
            std::ostringstream os;
            os << "MeijerShape: unsupported shape (" << m << "," << n << "," << p
               << "," << q << ")";
            throw parameter_error(os.str());
        }
        for (double v : a)
            if (!std::isfinite(v)) throw parameter_error("MeijerShape: non-finite a");
        for (double v : b)
            if (!std::isfinite(v)) throw parameter_error("MeijerShape: non-finite b");
    }
};

namespace detail {

struct Contour {
    double c;                // Re(s) of the integration line
    std::vector<double> a;   // possibly epsilon-shifted copies
    std::vector<double> b;
};

// Places the vertical contour. For shapes with both pole families the line
// sits at the midpoint of the separation gap; parameters are shifted by
// eps = 1e-6 when the gap is narrower than 1e-3 (degenerate parameter sets
// would otherwise put poles on the line). The e^{-z} shape has no right
// family, so the line goes through the saddle of Gamma(b1+s) z^{-s}.
inline Contour place_contour(const MeijerShape& s, double z) {
    Contour ct{0.0, s.a, s.b};
    double lo = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < s.m; ++j) lo = std::max(lo, -ct.b[j]);
    if (s.n == 0) {
        const double saddle = digamma_inverse(std::log(z)) - ct.b[0];
        ct.c = std::max(saddle, lo + 0.05);
        return ct;
    }
    double hi = std::numeric_limits<double>::infinity();
    for (int k = 0; k < s.n; ++k) hi = std::min(hi, 1.0 - ct.a[k]);
    double gap = hi - lo;
    if (gap <= 0.0) {
        std::ostringstream os;
        os << "meijer_g: pole families overlap (gap " << gap
           << "); contour cannot separate them";
        throw parameter_error(os.str());
    }
    if (gap < 1e-3) {
        const double eps = 1e-6;
        for (int j = 0; j < s.m; ++j) ct.b[j] += eps;
        for (int k = 0; k < s.n; ++k) ct.a[k] -= eps;
        lo -= eps;
        hi += eps;
        gap = hi - lo;
    }
    ct.c = lo + 0.5 * gap;
    return ct;
}

}  // namespace detail

/// Meijer G-function of a positive real argument, evaluated by numerical
/// Mellin-Barnes integration along a vertical contour separating the pole
/// families. Relative accuracy target 1e-8 (limited by cancellation when the
/// result is many orders below the integrand scale).
inline double meijer_g(const MeijerShape& shape, double z) {
    using cplx = std::complex<double>;
    shape.validate();
    if (!(z > 0.0) || !std::isfinite(z))
        throw domain_error("meijer_g: z must be positive and finite");

    const detail::Contour ct = detail::place_contour(shape, z);
    const double log_z = std::log(z);

    auto log_integrand = [&](cplx s) -> cplx {
        cplx w(0.0, 0.0);
        for (int j = 0; j < shape.m; ++j) w += log_gamma(ct.b[j] + s);
        for (int k = 0; k < shape.n; ++k) w += log_gamma(1.0 - ct.a[k] - s);
        for (int j = shape.m; j < shape.q; ++j) w -= log_gamma(1.0 - ct.b[j] - s);
        for (int k = shape.n; k < shape.p; ++k) w -= log_gamma(ct.a[k] + s);
        return w - s * log_z;
    };

    const double w0 = log_integrand(cplx(ct.c, 0.0)).real();
    auto f = [&](double t) {
        const cplx w = log_integrand(cplx(ct.c, t)) - w0;
        if (w.real() < -745.0) return 0.0;  // exp underflow
        return std::exp(w.real()) * std::cos(w.imag());
    };

    // The integrand decays at least like exp(-pi t / 2); march outward in
    // fixed segments until two consecutive contributions are negligible.
    const double seg = 4.0;
    const double t_max = 400.0;
    double acc = 0.0;
    int quiet = 0;
    bool done = false;
    for (double t0 = 0.0; t0 < t_max; t0 += seg) {
        const auto r = quad::integrate(f, t0, t0 + seg, 1e-14, 1e-12, 600);
        acc += r.value;
        if (std::fabs(r.value) < 1e-14 * std::max(1.0, std::fabs(acc)) &&
            std::fabs(f(t0 + seg)) < 1e-16) {
            if (++quiet >= 2) {
                done = true;
                break;
            }
        } else {
            quiet = 0;
        }
    }
    if (!done) {
        std::ostringstream os;
        os << "z=" << z << " contour_re=" << ct.c << " partial=" << acc;
        throw numeric_error("meijer_g: contour truncation failed", os.str());
    }
    return std::exp(w0) * acc / 3.14159265358979323846;
}

/// Convenience builders for the supported shapes.
inline MeijerShape meijer_shape_1001(double b1) {
    return MeijerShape{1, 0, 0, 1, {}, {b1}};
}
inline MeijerShape meijer_shape_1332(double a1, double a2, double a3, double b1,
                                     double b2) {
    return MeijerShape{1, 3, 3, 2, {a1, a2, a3}, {b1, b2}};
}
inline MeijerShape meijer_shape_1442(double a1, double a2, double a3, double a4,
                                     double b1, double b2) {
    return MeijerShape{1, 4, 4, 2, {a1, a2, a3, a4}, {b1, b2}};
}

}  // namespace semcom::specfun
