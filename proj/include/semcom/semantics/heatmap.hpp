#pragma once

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "semcom/errors.hpp"

namespace semcom::sem {

/// Row-major grid of non-negative attention/saliency weights.
struct Heatmap {
    int width = 0;
    int height = 0;
    std::vector<double> values;  // values[y * width + x]

    Heatmap() = default;
    Heatmap(int w, int h, double fill = 0.0)
        : width(w), height(h),
          values(static_cast<std::size_t>(w > 0 && h > 0 ? w * h : 0), fill) {
        validate();
    }
    Heatmap(int w, int h, std::vector<double> v)
        : width(w), height(h), values(std::move(v)) {
        validate();
    }

    void validate() const {
        if (width <= 0 || height <= 0)
            throw shape_error("Heatmap: dimensions must be positive");
        if (values.size() != static_cast<std::size_t>(width) * height)
            throw shape_error("Heatmap: value count does not match dimensions");
        for (double v : values)
            if (!std::isfinite(v) || v < 0.0)
                throw shape_error("Heatmap: values must be finite and >= 0");
    }

    double& at(int x, int y) { return values[static_cast<std::size_t>(y) * width + x]; }
    double at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }

    double max_value() const {
        double m = 0.0;
        for (double v : values) m = std::max(m, v);
        return m;
    }

    bool same_shape(const Heatmap& o) const {
        return width == o.width && height == o.height;
    }
};

/// Pixel box, [x0, x1) x [y0, y1).
struct Box {
    int x0 = 0, y0 = 0, x1 = 0, y1 = 0;

    void validate_within(int width, int height) const {
        if (!(0 <= x0 && x0 < x1 && x1 <= width && 0 <= y0 && y0 < y1 &&
              y1 <= height)) {
            std::ostringstream os;
            os << "Box [" << x0 << "," << y0 << "," << x1 << "," << y1
               << ") out of bounds for " << width << "x" << height << " grid";
            throw shape_error(os.str());
        }
    }
};

/// Divide by the global maximum; an all-zero grid passes through unchanged.
inline Heatmap normalize_heatmap(const Heatmap& h) {
    h.validate();
    const double m = h.max_value();
    if (m == 0.0) return h;
    Heatmap out = h;
    for (double& v : out.values) v /= m;
    return out;
}

enum class FuseConvention {
    text,  // alpha weights the objective attention (matches the experiments)
    eq17   // alpha weights the subjective saliency (the printed formula)
};

/// Weighted sum of the normalized objective attention and normalized
/// subjective saliency.
inline Heatmap fuse_attention(const Heatmap& h_obj_attn, const Heatmap& s_subj,
                              double alpha,
                              FuseConvention conv = FuseConvention::text) {
    if (!(alpha >= 0.0 && alpha <= 1.0))
        throw domain_error("fuse_attention: alpha must be in [0, 1]");
    if (!h_obj_attn.same_shape(s_subj))
        throw shape_error("fuse_attention: heatmap dimensions differ");
    const Heatmap hn = normalize_heatmap(h_obj_attn);
    const Heatmap sn = normalize_heatmap(s_subj);
    const double wh = conv == FuseConvention::text ? alpha : 1.0 - alpha;
    const double ws = 1.0 - wh;
    Heatmap out(hn.width, hn.height);
    for (std::size_t i = 0; i < out.values.size(); ++i)
        out.values[i] = wh * hn.values[i] + ws * sn.values[i];
    return out;
}

/// Sub-grid over the box.
inline Heatmap crop(const Heatmap& f, const Box& b) {
    f.validate();
    b.validate_within(f.width, f.height);
    Heatmap out(b.x1 - b.x0, b.y1 - b.y0);
    for (int y = b.y0; y < b.y1; ++y)
        for (int x = b.x0; x < b.x1; ++x)
            out.at(x - b.x0, y - b.y0) = f.at(x, y);
    return out;
}

inline double max_in_box(const Heatmap& f, const Box& b) {
    b.validate_within(f.width, f.height);
    double m = 0.0;
    for (int y = b.y0; y < b.y1; ++y)
        for (int x = b.x0; x < b.x1; ++x) m = std::max(m, f.at(x, y));
    return m;
}

}  // namespace semcom::sem
