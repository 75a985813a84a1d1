#pragma once

#include <cmath>
#include <vector>

#include "semcom/allocation/scenario.hpp"
#include "semcom/linkperf/delivery.hpp"
#include "semcom/semantics/score.hpp"

namespace semcom::alloc {

/// Nash-bargaining utility: the product of per-user match scores.
inline double nbs_utility(const std::vector<double>& scores) {
    if (scores.empty()) throw domain_error("nbs_utility: need at least one score");
    double u = 1.0;
    for (double s : scores) {
        if (!(s >= 0.0 && s <= 1.0))
            throw domain_error("nbs_utility: scores must be in [0, 1]");
        u *= s;
    }
    return u;
}

/// Splits a user's power across triplets proportionally to priority;
/// an all-zero priority vector falls back to an equal split.
inline std::vector<double> proportional_triplet_power(
    double user_power, const std::vector<double>& priorities) {
    if (!(user_power > 0.0))
        throw domain_error("proportional_triplet_power: user_power must be > 0");
    if (priorities.empty())
        throw domain_error("proportional_triplet_power: no priorities");
    double sum = 0.0;
    for (double p : priorities) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw domain_error("proportional_triplet_power: priorities must be >= 0");
        sum += p;
    }
    std::vector<double> out(priorities.size());
    if (sum == 0.0) {
        const double eq = user_power / priorities.size();
        for (double& v : out) v = eq;
        return out;
    }
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = user_power * priorities[i] / sum;
    return out;
}

/// Per-user BEP as a function of per-triplet power. Implementations may
/// evaluate exactly per call or interpolate a cached curve.
class BepModel {
public:
    virtual ~BepModel() = default;
    virtual double bep_at(std::size_t user, double power) const = 0;
};

/// Exact per-call evaluation (quadrature by default).
class DirectBepModel : public BepModel {
public:
    DirectBepModel(const Scenario& sc,
                   linkperf::BepMethod method = linkperf::BepMethod::quad)
        : method_(method) {
        for (const auto& l : sc.links) {
            bases_.push_back(l.sinr_at(1.0));
            mods_.push_back(l.modulation);
        }
    }

    double bep_at(std::size_t user, double power) const override {
        if (power <= 0.0) return 0.5;
        return linkperf::bep(bases_[user].with_power(power), mods_[user], method_);
    }

private:
    std::vector<fading::SinrParams> bases_;
    std::vector<linkperf::ModulationParams> mods_;
    linkperf::BepMethod method_;
};

/// Cached monotone tables over [p_total*1e-7, p_total], one per user. The
/// deterministic choice for anything that evaluates many allocations of the
/// same scenario (the GA, the simplex grid).
class TableBepModel : public BepModel {
public:
    TableBepModel(const Scenario& sc,
                  linkperf::BepMethod method = linkperf::BepMethod::quad,
                  int n_nodes = 160) {
        const double p_hi = sc.budget.p_total();
        const double p_lo = p_hi * 1e-7;
        for (const auto& l : sc.links)
            tables_.emplace_back(l.sinr_at(1.0), l.modulation, p_lo, p_hi, n_nodes,
                                 method);
    }

    double bep_at(std::size_t user, double power) const override {
        return tables_[user].bep_at(power);
    }

private:
    std::vector<linkperf::BepTable> tables_;
};

/// Full result of one allocation: user powers, the per-triplet split, the
/// expected score reports and the NBS utility.
struct AllocationResult {
    std::vector<double> user_powers;
    std::vector<std::vector<std::vector<double>>> triplet_powers;  // [user][image][triplet]
    std::vector<sem::ScoreReport> expected_scores;
    double utility = 0.0;
};

/// Precomputed per-scenario state: priority shares (power-independent) and
/// the location of each user's query-matching triplets. Makes a utility
/// evaluation a handful of BEP lookups.
class Evaluator {
public:
    Evaluator(const Scenario& sc, PriorityScheme scheme, const BepModel& bep)
        : sc_(&sc), bep_(&bep) {
        sc.validate();
        const auto& ds = sc.dataset;
        const std::size_t K = sc.n_users();
        shares_.resize(K);
        matching_.resize(K);
        for (std::size_t k = 0; k < K; ++k) {
            const auto& user = ds.users[k];
            std::vector<double> pr;
            for (const auto& img : ds.images) {
                const sem::Heatmap& sal = user.saliency.at(img.id);
                for (const auto& t : img.triplets) {
                    switch (scheme) {
                        case PriorityScheme::fused:
                            pr.push_back(sem::triplet_priority(
                                t, sal, sc.fusion.alpha, sc.fusion.convention));
                            break;
                        case PriorityScheme::objective:
                            pr.push_back(sem::objective_priority(t));
                            break;
                        case PriorityScheme::uniform:
                            pr.push_back(1.0);
                            break;
                    }
                }
            }
            double sum = 0.0;
            for (double p : pr) sum += p;
            shares_[k].resize(pr.size());
            for (std::size_t i = 0; i < pr.size(); ++i)
                shares_[k][i] = sum > 0.0 ? pr[i] / sum : 1.0 / pr.size();
            std::size_t flat = 0;
            for (std::size_t i = 0; i < ds.images.size(); ++i) {
                for (std::size_t j = 0; j < ds.images[i].triplets.size(); ++j, ++flat)
                    if (ds.images[i].triplets[j].pattern == user.query)
                        matching_[k].push_back({i, flat});
            }
        }
    }

    /// NBS utility of a user-power vector (closed form, no sampling).
    double utility(const std::vector<double>& user_powers) const {
        if (user_powers.size() != shares_.size())
            throw domain_error("Evaluator: user_powers size mismatch");
        double u = 1.0;
        for (std::size_t k = 0; k < shares_.size(); ++k)
            u *= score(k, clean_power(user_powers[k])).s;
        return u;
    }

    /// Expected score of one user at one slot power.
    sem::ScoreReport score(std::size_t k, double user_power) const {
        user_power = clean_power(user_power);
        const auto& ds = sc_->dataset;
        sem::ScoreReport rep;
        rep.n_rec = static_cast<int>(ds.images.size());
        std::size_t m = 0;
        for (std::size_t i = 0; i < ds.images.size(); ++i) {
            double miss = 1.0;
            bool truth = false;
            while (m < matching_[k].size() && matching_[k][m].image == i) {
                truth = true;
                miss *= 1.0 - delivery(k, user_power * shares_[k][matching_[k][m].flat]);
                ++m;
            }
            if (truth) {
                ++rep.n_truth;
                rep.n_in += 1.0 - miss;
            }
        }
        rep.s = rep.n_in / rep.n_rec;
        rep.s_tilde = static_cast<double>(rep.n_truth) / rep.n_rec;
        return rep;
    }

    /// Full allocation report for a user-power vector.
    AllocationResult evaluate(const std::vector<double>& user_powers) const {
        const auto& ds = sc_->dataset;
        const std::size_t K = shares_.size();
        if (user_powers.size() != K)
            throw domain_error("Evaluator: user_powers size mismatch");
        AllocationResult res;
        res.user_powers = user_powers;
        res.triplet_powers.resize(K);
        std::vector<double> scores;
        for (std::size_t k = 0; k < K; ++k) {
            sem::DeliveryProbs probs(ds.images.size());
            res.triplet_powers[k].resize(ds.images.size());
            const double pk = clean_power(user_powers[k]);
            std::size_t flat = 0;
            for (std::size_t i = 0; i < ds.images.size(); ++i) {
                const std::size_t nt = ds.images[i].triplets.size();
                probs[i].resize(nt);
                res.triplet_powers[k][i].resize(nt);
                for (std::size_t j = 0; j < nt; ++j, ++flat) {
                    const double p = pk * shares_[k][flat];
                    res.triplet_powers[k][i][j] = p;
                    probs[i][j] = delivery(k, p);
                }
            }
            res.expected_scores.push_back(
                sem::expected_score(ds.users[k], ds, probs));
            scores.push_back(res.expected_scores.back().s);
        }
        res.utility = nbs_utility(scores);
        return res;
    }

    const Scenario& scenario() const { return *sc_; }

private:
    // Simplex arithmetic leaves -1e-17 dust on boundary points; absorb it,
    // reject anything genuinely negative.
    double clean_power(double p) const {
        if (p >= 0.0) return p;
        if (p > -1e-9 * sc_->budget.p_total()) return 0.0;
        throw domain_error("Evaluator: negative user power");
    }

    double delivery(std::size_t k, double power) const {
        const double e = bep_->bep_at(k, power);
        return 1.0 - linkperf::tdp(e, sc_->links[k].coding);
    }

    struct MatchRef {
        std::size_t image;
        std::size_t flat;
    };

    const Scenario* sc_;
    const BepModel* bep_;
    std::vector<std::vector<double>> shares_;
    std::vector<std::vector<MatchRef>> matching_;
};

/// Uniform split at every level: the no-prioritization baseline.
inline AllocationResult naive_allocation(const Scenario& sc, const BepModel& bep) {
    sc.validate();
    Evaluator ev(sc, PriorityScheme::uniform, bep);
    std::vector<double> powers(sc.n_users(), sc.budget.p_total() / sc.n_users());
    return ev.evaluate(powers);
}

}  // namespace semcom::alloc
