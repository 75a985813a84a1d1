#pragma once

#include <map>
#include <string>
#include <vector>

#include "semcom/semantics/heatmap.hpp"

namespace semcom::sem {

/// (subject, relation, object) pattern, used both for detected triplets and
/// for user queries.
struct TripletPattern {
    std::string subject;
    std::string relation;
    std::string object;

    bool operator==(const TripletPattern&) const = default;

    void validate() const {
        if (subject.empty() || relation.empty() || object.empty())
            throw parse_error("", -1, "triplet",
                              "subject/relation/object strings must be non-empty");
    }
};

/// One detected scene-graph fact with its entity boxes and objective
/// attention heatmaps (full image size).
struct Triplet {
    TripletPattern pattern;
    Box box_sub;
    Box box_obj;
    Heatmap h_sub;
    Heatmap h_obj;

    void validate() const {
        pattern.validate();
        h_sub.validate();
        h_obj.validate();
        if (!h_sub.same_shape(h_obj))
            throw shape_error("Triplet: subject/object heatmaps differ in shape");
        box_sub.validate_within(h_sub.width, h_sub.height);
        box_obj.validate_within(h_obj.width, h_obj.height);
    }
};

struct ImageRecord {
    std::string id;
    long size_bytes = 0;
    std::vector<Triplet> triplets;

    void validate() const {
        if (id.empty()) throw parse_error("", -1, "image.id", "must be non-empty");
        if (size_bytes <= 0)
            throw parse_error("", -1, "image.size_bytes", "must be positive");
        if (triplets.empty())
            throw parse_error("", -1, "image.triplets", "at least one required");
        for (const auto& t : triplets) t.validate();
    }
};

struct UserProfile {
    int user_id = 0;
    TripletPattern query;
    std::map<std::string, Heatmap> saliency;  // image id -> S^k

    void validate() const {
        if (user_id <= 0) throw parse_error("", -1, "user.id", "must be positive");
        query.validate();
    }
};

struct Dataset {
    std::vector<ImageRecord> images;
    std::vector<UserProfile> users;

    void validate() const {
        std::map<std::string, const ImageRecord*> seen;
        for (const auto& img : images) {
            img.validate();
            if (!seen.emplace(img.id, &img).second)
                throw parse_error("", -1, "image.id", "duplicate id '" + img.id + "'");
        }
        for (const auto& u : users) {
            u.validate();
            for (const auto& img : images) {
                const auto it = u.saliency.find(img.id);
                if (it == u.saliency.end())
                    throw parse_error("", -1, "user.saliency",
                                      "user " + std::to_string(u.user_id) +
                                          " missing saliency for image '" + img.id +
                                          "'");
                if (!img.triplets.front().h_sub.same_shape(it->second))
                    throw shape_error("Dataset: saliency dimensions mismatch image '" +
                                      img.id + "'");
            }
        }
    }
};

/// Personalized priority of a triplet for a user: the product of the maxima
/// of the fused (attention + saliency) heatmaps inside the entity boxes.
inline double triplet_priority(const Triplet& t, const Heatmap& s_user,
                               double alpha,
                               FuseConvention conv = FuseConvention::text) {
    t.validate();
    const double ps = max_in_box(fuse_attention(t.h_sub, s_user, alpha, conv),
                                 t.box_sub);
    const double po = max_in_box(fuse_attention(t.h_obj, s_user, alpha, conv),
                                 t.box_obj);
    return ps * po;
}

/// Objective-only priority (the user-independent benchmark); equals
/// triplet_priority at alpha = 1 under the text convention.
inline double objective_priority(const Triplet& t) {
    t.validate();
    return max_in_box(normalize_heatmap(t.h_sub), t.box_sub) *
           max_in_box(normalize_heatmap(t.h_obj), t.box_obj);
}

/// Accurate-mode triplet search: 1 when the query appears verbatim among the
/// received triplets, 0 otherwise.
inline int match_score_am(const std::vector<TripletPattern>& received,
                          const TripletPattern& query) {
    for (const auto& r : received)
        if (r == query) return 1;
    return 0;
}

}  // namespace semcom::sem
