#pragma once

#include <cstdint>
#include <vector>

#include "semcom/errors.hpp"
#include "semcom/linkperf/user_link.hpp"
#include "semcom/semantics/heatmap.hpp"
#include "semcom/semantics/triplet.hpp"

namespace semcom::alloc {

/// Slot energy budget: w_a joules spendable over a t_1-second slot, so the
/// summed transmit power across users may not exceed w_a / t_1.
struct PowerBudget {
    double w_a = 3000.0;
    double t_1 = 1.0;

    double p_total() const { return w_a / t_1; }

    void validate() const {
        if (!(w_a > 0.0) || !(t_1 > 0.0))
            throw domain_error("PowerBudget: w_a and t_1 must be > 0");
    }
};

struct FusionSettings {
    double alpha = 0.2;
    sem::FuseConvention convention = sem::FuseConvention::text;

    void validate() const {
        if (!(alpha >= 0.0 && alpha <= 1.0))
            throw domain_error("FusionSettings: alpha must be in [0, 1]");
    }
};

/// How per-triplet weights are formed before the proportional power split.
enum class PriorityScheme {
    fused,      // personal fused-attention priorities at the scenario alpha
    objective,  // objective attention only (the alpha = 1 benchmark)
    uniform     // equal weights (the naive benchmark)
};

/// One experiment: per-user channels aligned with the dataset's user list,
/// the semantic payload, the slot budget and fusion settings.
struct Scenario {
    std::vector<linkperf::UserLink> links;
    sem::Dataset dataset;
    PowerBudget budget;
    FusionSettings fusion;
    std::uint64_t seed = 1;

    void validate() const {
        if (links.empty()) throw domain_error("Scenario: need at least one user");
        if (links.size() != dataset.users.size())
            throw domain_error("Scenario: links and dataset users must align");
        for (const auto& l : links) l.validate();
        dataset.validate();
        budget.validate();
        fusion.validate();
    }

    std::size_t n_users() const { return links.size(); }
};

}  // namespace semcom::alloc
