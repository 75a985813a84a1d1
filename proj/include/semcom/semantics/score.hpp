#pragma once

#include <cmath>
#include <vector>

#include "semcom/errors.hpp"
#include "semcom/semantics/triplet.hpp"

namespace semcom::sem {

/// Match-score bookkeeping for one user. n_in is the (expected) number of
/// images matched after transmission; it is fractional under the closed-form
/// expectation and integral under realized/Monte-Carlo scoring.
struct ScoreReport {
    int n_rec = 0;       // images offered
    double n_in = 0.0;   // images matched after drops (expected)
    int n_truth = 0;     // images matching with no drops
    double s = 0.0;      // n_in / n_rec
    double s_tilde = 0.0;  // n_truth / n_rec
};

/// Per-image, per-triplet delivery probabilities aligned with a Dataset's
/// images/triplets vectors.
using DeliveryProbs = std::vector<std::vector<double>>;

/// Closed-form expectation of the match score under independent triplet
/// drops: an image counts with probability 1 - prod(1 - p) over its
/// query-equal triplets.
inline ScoreReport expected_score(const UserProfile& user, const Dataset& data,
                                  const DeliveryProbs& delivery) {
    if (delivery.size() != data.images.size())
        throw shape_error("expected_score: delivery rows != image count");
    ScoreReport rep;
    rep.n_rec = static_cast<int>(data.images.size());
    if (rep.n_rec == 0) throw domain_error("expected_score: empty dataset");
    for (std::size_t i = 0; i < data.images.size(); ++i) {
        const auto& img = data.images[i];
        if (delivery[i].size() != img.triplets.size())
            throw shape_error("expected_score: delivery cols != triplet count");
        double miss_all = 1.0;
        bool truth = false;
        for (std::size_t j = 0; j < img.triplets.size(); ++j) {
            if (img.triplets[j].pattern == user.query) {
                truth = true;
                const double p = delivery[i][j];
                if (!(p >= 0.0 && p <= 1.0))
                    throw domain_error("expected_score: delivery prob outside [0,1]");
                miss_all *= 1.0 - p;
            }
        }
        if (truth) {
            ++rep.n_truth;
            rep.n_in += 1.0 - miss_all;
        }
    }
    rep.s = rep.n_in / rep.n_rec;
    rep.s_tilde = static_cast<double>(rep.n_truth) / rep.n_rec;
    return rep;
}

}  // namespace semcom::sem
