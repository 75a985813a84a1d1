#pragma once

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "semcom/errors.hpp"
#include "semcom/random/philox.hpp"
#include "semcom/semantics/triplet.hpp"

namespace semcom::sem {

/// Controls for the synthetic dataset generator, the stand-in for the neural
/// triplet-detection and saliency-prediction stages. Matching images carry
/// the user's query triplet verbatim; the user's saliency blob lands on the
/// query entities with probability saliency_hit and on a decoy triplet
/// otherwise, which is what gives the fusion coefficient something to trade
/// off.
struct SynthSpec {
    int n_images = 8;
    int n_users = 3;
    int grid_w = 24;
    int grid_h = 24;
    int triplets_per_image = 10;
    long image_size_bytes = 1270000;
    double match_fraction = 0.5;
    double saliency_hit = 0.75;
    double decoy_amp = 1.0;
    double background = 0.05;
    std::vector<std::string> subjects = {"woman", "man",   "sign",
                                         "bus",   "car",   "tree"};
    std::vector<std::string> relations = {"has", "on", "wearing", "near", "behind"};
    std::vector<std::string> objects = {"hair",   "building", "shirt",
                                        "street", "jacket",   "window"};
    std::vector<TripletPattern> queries = {{"woman", "has", "hair"},
                                           {"sign", "on", "building"},
                                           {"woman", "wearing", "shirt"}};

    void validate() const {
        if (n_images < 1 || n_users < 1)
            throw domain_error("SynthSpec: need >= 1 image and user");
        if (grid_w < 8 || grid_h < 8)
            throw domain_error("SynthSpec: grid must be at least 8x8");
        if (image_size_bytes <= 0)
            throw domain_error("SynthSpec: image_size_bytes must be positive");
        if (subjects.empty() || relations.empty() || objects.empty())
            throw domain_error("SynthSpec: vocabulary must be non-empty");
        if (!(match_fraction >= 0.0 && match_fraction <= 1.0) ||
            !(saliency_hit >= 0.0 && saliency_hit <= 1.0))
            throw domain_error("SynthSpec: fractions must be in [0, 1]");
        // Distinct query patterns all fit in one image alongside a filler.
        if (triplets_per_image < n_users + 1 && n_users > 1)
            throw domain_error("SynthSpec: triplets_per_image must exceed n_users");
        if (triplets_per_image < 1)
            throw domain_error("SynthSpec: triplets_per_image must be >= 1");
    }
};

namespace detail {

inline void add_blob(Heatmap& hm, double cx, double cy, double sigma, double amp) {
    for (int y = 0; y < hm.height; ++y)
        for (int x = 0; x < hm.width; ++x) {
            const double dx = x - cx, dy = y - cy;
            hm.at(x, y) += amp * std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        }
}

inline Box random_box(rng::Stream& rs, int w, int h) {
    const int bw = w / 6 + static_cast<int>(rs.u01() * (w / 3 - w / 6 + 1));
    const int bh = h / 6 + static_cast<int>(rs.u01() * (h / 3 - h / 6 + 1));
    const int x0 = static_cast<int>(rs.u01() * (w - bw));
    const int y0 = static_cast<int>(rs.u01() * (h - bh));
    return Box{x0, y0, x0 + bw, y0 + bh};
}

inline TripletPattern random_pattern(rng::Stream& rs, const SynthSpec& spec) {
    auto pick = [&](const std::vector<std::string>& v) {
        return v[static_cast<std::size_t>(rs.u01() * v.size()) % v.size()];
    };
    return TripletPattern{pick(spec.subjects), pick(spec.relations),
                          pick(spec.objects)};
}

inline Triplet make_triplet(rng::Stream& rs, const SynthSpec& spec,
                            const TripletPattern& pat) {
    Triplet t;
    t.pattern = pat;
    t.box_sub = random_box(rs, spec.grid_w, spec.grid_h);
    t.box_obj = random_box(rs, spec.grid_w, spec.grid_h);
    t.h_sub = Heatmap(spec.grid_w, spec.grid_h, spec.background);
    t.h_obj = Heatmap(spec.grid_w, spec.grid_h, spec.background);
    const double amp_s = 0.6 + 0.4 * rs.u01();
    const double amp_o = 0.6 + 0.4 * rs.u01();
    add_blob(t.h_sub, 0.5 * (t.box_sub.x0 + t.box_sub.x1),
             0.5 * (t.box_sub.y0 + t.box_sub.y1),
             0.5 * (t.box_sub.x1 - t.box_sub.x0), amp_s);
    add_blob(t.h_obj, 0.5 * (t.box_obj.x0 + t.box_obj.x1),
             0.5 * (t.box_obj.y0 + t.box_obj.y1),
             0.5 * (t.box_obj.x1 - t.box_obj.x0), amp_o);
    return t;
}

}  // namespace detail

/// Deterministic synthetic dataset: Gaussian-blob attention and saliency,
/// a configurable vocabulary, per-user queries, and a guaranteed >= 1
/// matching image per user.
inline Dataset synth_dataset(const SynthSpec& spec, std::uint64_t seed) {
    spec.validate();
    rng::Stream root(seed, rng::fnv1a(rng::kFnvOffset, 0x73796e7468ULL));  // "synth"

    // Per-user queries; generated past the provided list, kept distinct.
    std::vector<TripletPattern> queries;
    {
        rng::Stream qs = root.derive(1);
        for (int k = 0; k < spec.n_users; ++k) {
            if (k < static_cast<int>(spec.queries.size())) {
                queries.push_back(spec.queries[k]);
                continue;
            }
            for (int tries = 0; tries < 1000; ++tries) {
                TripletPattern p = detail::random_pattern(qs, spec);
                bool dup = false;
                for (const auto& q : queries) dup = dup || q == p;
                if (!dup) {
                    queries.push_back(p);
                    break;
                }
            }
            if (static_cast<int>(queries.size()) != k + 1)
                throw domain_error("synth_dataset: vocabulary too small for distinct queries");
        }
    }

    // Which images contain which user's query.
    std::vector<std::vector<bool>> contains(spec.n_images,
                                            std::vector<bool>(spec.n_users, false));
    {
        rng::Stream ms = root.derive(2);
        for (int i = 0; i < spec.n_images; ++i)
            for (int k = 0; k < spec.n_users; ++k)
                contains[i][k] = ms.u01() < spec.match_fraction;
        for (int k = 0; k < spec.n_users; ++k) {
            bool any = false;
            for (int i = 0; i < spec.n_images; ++i) any = any || contains[i][k];
            if (!any) contains[k % spec.n_images][k] = true;
        }
    }

    Dataset ds;
    for (int i = 0; i < spec.n_images; ++i) {
        rng::Stream is = root.derive(3, static_cast<std::uint64_t>(i));
        ImageRecord img;
        {
            char buf[16];
            std::snprintf(buf, sizeof buf, "img%03d", i);
            img.id = buf;
        }
        img.size_bytes = spec.image_size_bytes;
        // Query triplets first (unique patterns), then random fillers that
        // collide with no query and no early duplicate.
        std::vector<TripletPattern> pats;
        for (int k = 0; k < spec.n_users; ++k) {
            if (!contains[i][k]) continue;
            bool present = false;
            for (const auto& p : pats) present = present || p == queries[k];
            if (!present) pats.push_back(queries[k]);
        }
        while (static_cast<int>(pats.size()) < spec.triplets_per_image) {
            TripletPattern p;
            bool clean = false;
            for (int tries = 0; tries < 200 && !clean; ++tries) {
                p = detail::random_pattern(is, spec);
                clean = true;
                for (const auto& q : queries) clean = clean && !(q == p);
                for (const auto& q : pats) clean = clean && !(q == p);
            }
            if (!clean)
                throw domain_error("synth_dataset: vocabulary too small for filler triplets");
            pats.push_back(p);
        }
        for (const auto& p : pats) img.triplets.push_back(detail::make_triplet(is, spec, p));
        ds.images.push_back(std::move(img));
    }

    for (int k = 0; k < spec.n_users; ++k) {
        UserProfile u;
        u.user_id = k + 1;
        u.query = queries[k];
        for (int i = 0; i < spec.n_images; ++i) {
            rng::Stream ss = root.derive(4, static_cast<std::uint64_t>(k) * 100003u + i);
            Heatmap sal(spec.grid_w, spec.grid_h, spec.background);
            const auto& img = ds.images[i];
            int query_idx = -1;
            for (std::size_t t = 0; t < img.triplets.size(); ++t)
                if (img.triplets[t].pattern == u.query) query_idx = static_cast<int>(t);
            const bool hit = query_idx >= 0 && ss.u01() < spec.saliency_hit;
            int focus_idx;
            double amp;
            if (hit) {
                focus_idx = query_idx;
                amp = 1.0;
            } else {
                // Decoy: the user is looking at some other triplet's entities.
                int pickable = static_cast<int>(img.triplets.size());
                int idx = static_cast<int>(ss.u01() * pickable) % pickable;
                if (idx == query_idx) idx = (idx + 1) % pickable;
                focus_idx = idx;
                amp = spec.decoy_amp;
            }
            const Triplet& f = img.triplets[focus_idx];
            detail::add_blob(sal, 0.5 * (f.box_sub.x0 + f.box_sub.x1),
                             0.5 * (f.box_sub.y0 + f.box_sub.y1),
                             0.6 * (f.box_sub.x1 - f.box_sub.x0), amp);
            detail::add_blob(sal, 0.5 * (f.box_obj.x0 + f.box_obj.x1),
                             0.5 * (f.box_obj.y0 + f.box_obj.y1),
                             0.6 * (f.box_obj.x1 - f.box_obj.x0), amp);
            u.saliency[img.id] = std::move(sal);
        }
        ds.users.push_back(std::move(u));
    }
    ds.validate();
    return ds;
}

}  // namespace semcom::sem
