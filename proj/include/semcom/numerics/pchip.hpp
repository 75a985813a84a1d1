#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "semcom/errors.hpp"

namespace semcom::interp {

/// Monotone (Fritsch-Carlson) piecewise-cubic Hermite interpolant. Preserves
/// the monotonicity of the data, which is what makes it safe for cached
/// BEP-vs-power curves.
class Pchip {
public:
    Pchip() = default;
    Pchip(std::vector<double> x, std::vector<double> y)
        : x_(std::move(x)), y_(std::move(y)) {
        const std::size_t n = x_.size();
        if (n < 2 || y_.size() != n)
            throw shape_error("Pchip: need >= 2 nodes with matching sizes");
        for (std::size_t i = 1; i < n; ++i)
            if (!(x_[i] > x_[i - 1]))
                throw shape_error("Pchip: abscissae must be strictly increasing");
        m_.assign(n, 0.0);
        std::vector<double> h(n - 1), d(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            h[i] = x_[i + 1] - x_[i];
            d[i] = (y_[i + 1] - y_[i]) / h[i];
        }
        for (std::size_t i = 1; i + 1 < n; ++i) {
            if (d[i - 1] * d[i] <= 0.0) {
                m_[i] = 0.0;
            } else {
                const double w1 = 2.0 * h[i] + h[i - 1];
                const double w2 = h[i] + 2.0 * h[i - 1];
                m_[i] = (w1 + w2) / (w1 / d[i - 1] + w2 / d[i]);
            }
        }
        m_[0] = edge_slope(h[0], h.size() > 1 ? h[1] : h[0], d[0],
                           d.size() > 1 ? d[1] : d[0]);
        m_[n - 1] = edge_slope(h[n - 2], n > 2 ? h[n - 3] : h[n - 2], d[n - 2],
                               n > 2 ? d[n - 3] : d[n - 2]);
    }

    double operator()(double x) const {
        const std::size_t n = x_.size();
        if (x <= x_.front()) return y_.front() + m_.front() * (x - x_.front());
        if (x >= x_.back()) return y_.back() + m_.back() * (x - x_.back());
        const auto it = std::upper_bound(x_.begin(), x_.end(), x);
        const std::size_t i = static_cast<std::size_t>(it - x_.begin()) - 1;
        const double h = x_[i + 1] - x_[i];
        const double t = (x - x_[i]) / h;
        const double t2 = t * t, t3 = t2 * t;
        return y_[i] * (2 * t3 - 3 * t2 + 1) + h * m_[i] * (t3 - 2 * t2 + t) +
               y_[i + 1] * (-2 * t3 + 3 * t2) + h * m_[i + 1] * (t3 - t2);
    }

    double x_min() const { return x_.front(); }
    double x_max() const { return x_.back(); }

private:
    static double edge_slope(double h0, double h1, double d0, double d1) {
        double m = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
        if (m * d0 <= 0.0) return 0.0;
        if (std::fabs(m) > 3.0 * std::fabs(d0)) return 3.0 * d0;
        return m;
    }

    std::vector<double> x_, y_, m_;
};

}  // namespace semcom::interp
