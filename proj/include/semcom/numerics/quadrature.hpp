#pragma once

#include <cmath>
#include <cstdint>
#include <queue>
#include <sstream>
#include <utility>
#include <vector>

#include "semcom/errors.hpp"

namespace semcom::quad {

struct Result {
    double value = 0.0;
    double error = 0.0;   // estimated absolute error
    long evals = 0;
    bool converged = false;
};

namespace detail {

// 15-point Kronrod abscissae (positive half) and weights, with the embedded
// 7-point Gauss rule on the odd-indexed nodes.
inline constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};

inline constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};

inline constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

template <class F>
inline void gk15_panel(F& f, double a, double b, double& val, double& err) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = f(c);
    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::fabs(fc) * kWgk[7];
    for (int j = 0; j < 7; ++j) {
        const double x = h * kXgk[j];
        const double f1 = f(c - x);
        const double f2 = f(c + x);
        res_k += kWgk[j] * (f1 + f2);
        res_abs += kWgk[j] * (std::fabs(f1) + std::fabs(f2));
        if (j % 2 == 1) res_g += kWg[j / 2] * (f1 + f2);
    }
    val = res_k * h;
    res_abs *= std::fabs(h);
    // QUADPACK-style error damping: the raw |K15-G7| difference is usually a
    // gross overestimate on smooth panels.
    double e = std::fabs((res_k - res_g) * h);
    if (res_abs > 0.0 && e > 0.0)
        e = res_abs * std::min(1.0, std::pow(200.0 * e / res_abs, 1.5));
    err = e;
}

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace detail

/// Globally adaptive Gauss-Kronrod integration of f over [a, b]. Splits the
/// worst panel until the summed error estimate meets max(abs_tol,
/// rel_tol*|integral|) or the panel budget runs out.
template <class F>
Result integrate(F&& f, double a, double b, double abs_tol = 1e-10,
                 double rel_tol = 1e-10, int max_panels = 4000) {
    Result r;
    if (a == b) {
        r.converged = true;
        return r;
    }
    double v0, e0;
    detail::gk15_panel(f, a, b, v0, e0);
    r.evals = 15;
    std::priority_queue<detail::Panel> heap;
    heap.push({a, b, v0, e0});
    double total_v = v0, total_e = e0;
    int panels = 1;
    while (total_e > std::max(abs_tol, rel_tol * std::fabs(total_v)) &&
           panels < max_panels) {
        detail::Panel p = heap.top();
        heap.pop();
        const double mid = 0.5 * (p.a + p.b);
        if (mid <= p.a || mid >= p.b) {
            // Interval exhausted at machine precision; keep its estimate.
            total_v = p.value;
            total_e = p.error;
            for (auto rest = heap; !rest.empty(); rest.pop()) {
                total_v += rest.top().value;
                total_e += rest.top().error;
            }
            heap.push(p);
            break;
        }
        double v1, e1, v2, e2;
        detail::gk15_panel(f, p.a, mid, v1, e1);
        detail::gk15_panel(f, mid, p.b, v2, e2);
        r.evals += 30;
        total_v += v1 + v2 - p.value;
        total_e += e1 + e2 - p.error;
        heap.push({p.a, mid, v1, e1});
        heap.push({mid, p.b, v2, e2});
        ++panels;
    }
    r.value = total_v;
    r.error = total_e;
    r.converged = total_e <= std::max(abs_tol, rel_tol * std::fabs(total_v));
    return r;
}

/// Like integrate(), but throws numeric_error with the residual estimate when
/// the error target is not met.
template <class F>
double integrate_or_throw(F&& f, double a, double b, double abs_tol = 1e-10,
                          double rel_tol = 1e-10, int max_panels = 4000) {
    Result r = integrate(std::forward<F>(f), a, b, abs_tol, rel_tol, max_panels);
    if (!r.converged) {
        std::ostringstream os;
        os << "interval [" << a << ", " << b << "], value " << r.value
           << ", residual " << r.error << ", evals " << r.evals;
        throw numeric_error("quadrature did not converge", os.str());
    }
    return r.value;
}

}  // namespace semcom::quad
