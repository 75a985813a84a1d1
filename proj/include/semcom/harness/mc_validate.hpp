#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "semcom/allocation/evaluate.hpp"
#include "semcom/allocation/rcga.hpp"
#include "semcom/harness/config.hpp"
#include "semcom/harness/csv.hpp"
#include "semcom/harness/runners.hpp"
#include "semcom/linkperf/bep.hpp"

namespace semcom::harness {

enum class McGranularity {
    per_bit,     // channel redrawn per bit: exactly the averaged-BEP model
    per_triplet  // one channel state per triplet (block fading)
};

struct McUserStats {
    double closed_score = 0.0;
    double mc_mean = 0.0;
    double mc_stderr = 0.0;
    double z = 0.0;
};

struct McValidationReport {
    std::vector<McUserStats> users;
    double closed_utility = 0.0;
    double mc_utility_mean = 0.0;
    double mc_utility_stderr = 0.0;
    double utility_z = 0.0;
    long replications = 0;
};

/// Bit-level end-to-end oracle: simulates the send/receive path (channel
/// draw, conditional bit flips, block-decode, exact-match scoring) and
/// compares realized scores and utility against the closed-form expectation
/// of the same allocation. Deterministic per (seed, replication, user).
inline McValidationReport mc_end_to_end(
    const alloc::Scenario& sc, const alloc::AllocationResult& allocation,
    const std::vector<sem::ScoreReport>& closed_scores, double closed_utility,
    long replications, McGranularity granularity = McGranularity::per_bit) {
    sc.validate();
    if (replications < 2) throw domain_error("mc_end_to_end: replications must be >= 2");
    const auto& ds = sc.dataset;
    const std::size_t K = sc.n_users();

    // Per (user, image): powers of the query-equal triplets. Non-matching
    // triplets cannot affect TS-AM scores, so their drops are not simulated.
    struct Target {
        std::size_t image;
        std::vector<double> powers;
    };
    std::vector<std::vector<Target>> targets(K);
    for (std::size_t k = 0; k < K; ++k) {
        for (std::size_t i = 0; i < ds.images.size(); ++i) {
            Target tg{i, {}};
            for (std::size_t j = 0; j < ds.images[i].triplets.size(); ++j)
                if (ds.images[i].triplets[j].pattern == ds.users[k].query)
                    tg.powers.push_back(allocation.triplet_powers[k][i][j]);
            if (!tg.powers.empty()) targets[k].push_back(std::move(tg));
        }
    }

    std::vector<fading::SinrParams> base;
    for (const auto& l : sc.links) base.push_back(l.sinr_at(1.0));

    McValidationReport rep;
    rep.replications = replications;
    rep.closed_utility = closed_utility;
    std::vector<double> sum_s(K, 0.0), sum_s2(K, 0.0);
    double sum_u = 0.0, sum_u2 = 0.0;
    const double n_rec = static_cast<double>(ds.images.size());

    rng::Stream root(sc.seed, rng::fnv1a(rng::kFnvOffset, 0x6d637632ULL));
    for (long r = 0; r < replications; ++r) {
        double util = 1.0;
        for (std::size_t k = 0; k < K; ++k) {
            rng::Stream stream = root.derive(static_cast<std::uint64_t>(r), k);
            const auto& link = sc.links[k];
            int matched = 0;
            for (const auto& tg : targets[k]) {
                bool image_matched = false;
                for (double p : tg.powers) {
                    if (image_matched) break;
                    int errors = 0;
                    if (p <= 0.0) {
                        for (int b = 0; b < link.coding.d_t; ++b)
                            errors += stream.u01() < 0.5;
                    } else if (granularity == McGranularity::per_bit) {
                        const auto sp = base[k].with_power(p);
                        for (int b = 0; b < link.coding.d_t; ++b) {
                            const double e = linkperf::conditional_bep(
                                fading::sinr_sample(sp, stream), link.modulation);
                            errors += stream.u01() < e;
                        }
                    } else {
                        const auto sp = base[k].with_power(p);
                        const double e = linkperf::conditional_bep(
                            fading::sinr_sample(sp, stream), link.modulation);
                        for (int b = 0; b < link.coding.d_t; ++b)
                            errors += stream.u01() < e;
                    }
                    image_matched = errors <= link.coding.d_e;
                }
                matched += image_matched;
            }
            const double s = matched / n_rec;
            sum_s[k] += s;
            sum_s2[k] += s * s;
            util *= s;
        }
        sum_u += util;
        sum_u2 += util * util;
    }

    for (std::size_t k = 0; k < K; ++k) {
        McUserStats us;
        us.closed_score = closed_scores[k].s;
        us.mc_mean = sum_s[k] / replications;
        const double var = std::max(0.0, sum_s2[k] / replications - us.mc_mean * us.mc_mean);
        us.mc_stderr = std::sqrt(var / replications);
        us.z = us.mc_stderr > 0.0 ? (us.mc_mean - us.closed_score) / us.mc_stderr
                                  : 0.0;
        rep.users.push_back(us);
    }
    rep.mc_utility_mean = sum_u / replications;
    const double var = std::max(0.0, sum_u2 / replications - rep.mc_utility_mean * rep.mc_utility_mean);
    rep.mc_utility_stderr = std::sqrt(var / replications);
    rep.utility_z = rep.mc_utility_stderr > 0.0
                        ? (rep.mc_utility_mean - rep.closed_utility) / rep.mc_utility_stderr
                        : 0.0;
    return rep;
}

/// Convenience wrapper: NBS-allocate the configured scenario, evaluate the
/// closed form with exact (non-tabled) BEP, then Monte-Carlo the same
/// allocation.
inline McValidationReport mc_validate(const ScenarioConfig& cfg, long replications) {
    alloc::Scenario sc = build_scenario(cfg);
    const alloc::TableBepModel table(sc, linkperf::BepMethod::quad, cfg.bep_table_nodes);
    const auto ga = alloc::rcga_optimize(sc, cfg.rcga, table);
    const alloc::DirectBepModel exact(sc, linkperf::BepMethod::quad);
    const alloc::Evaluator ev(sc, alloc::PriorityScheme::fused, exact);
    const auto closed = ev.evaluate(ga.user_powers);
    const McGranularity g = cfg.mc.granularity == "per_triplet"
                                ? McGranularity::per_triplet
                                : McGranularity::per_bit;
    return mc_end_to_end(sc, closed, closed.expected_scores, closed.utility,
                         replications, g);
}

inline Table mc_validation_table(const ScenarioConfig& cfg,
                                 const McValidationReport& r) {
    Table t;
    t.name = "mc_validate";
    t.comments = detail::header_comments(cfg);
    t.comments.push_back("replications: " + std::to_string(r.replications));
    t.comments.push_back("utility_closed: " + format_cell(r.closed_utility));
    t.comments.push_back("utility_mc: " + format_cell(r.mc_utility_mean) + " +- " +
                         format_cell(r.mc_utility_stderr) +
                         " (z = " + format_cell(r.utility_z) + ")");
    t.columns = {"user", "score_closed", "score_mc", "score_stderr", "z"};
    for (std::size_t k = 0; k < r.users.size(); ++k) {
        const auto& u = r.users[k];
        t.add_row({static_cast<double>(k + 1), u.closed_score, u.mc_mean,
                   u.mc_stderr, u.z});
    }
    return t;
}

}  // namespace semcom::harness
