#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "semcom/allocation/evaluate.hpp"
#include "semcom/random/philox.hpp"

namespace semcom::alloc {

struct RcgaConfig {
    int population = 50;
    double mutation_prob = 0.001;
    int max_iter = 20;
    double blend = 0.5;        // BLX crossover extension factor
    int tournament = 2;
    int elitism = 1;
    double mutation_sigma = 0.1;  // of the gene range (proportions, range 1)
    std::uint64_t seed = 0;       // 0: derive from the scenario seed

    void validate() const {
        if (population < 2) throw domain_error("RcgaConfig: population must be >= 2");
        if (!(mutation_prob >= 0.0 && mutation_prob <= 1.0))
            throw domain_error("RcgaConfig: mutation_prob must be in [0, 1]");
        if (max_iter < 1) throw domain_error("RcgaConfig: max_iter must be >= 1");
        if (tournament < 1) throw domain_error("RcgaConfig: tournament must be >= 1");
        if (elitism < 0 || elitism >= population)
            throw domain_error("RcgaConfig: elitism must be in [0, population)");
    }
};

namespace detail {

// Clamp negatives and renormalize onto the unit simplex.
inline void project_simplex(std::vector<double>& g) {
    double sum = 0.0;
    for (double& v : g) {
        if (!(v > 0.0)) v = 0.0;
        sum += v;
    }
    if (sum <= 0.0) {
        for (double& v : g) v = 1.0 / g.size();
        return;
    }
    for (double& v : g) v /= sum;
}

}  // namespace detail

struct RcgaTrace {
    std::vector<double> best_per_generation;
};

/// Real-coded GA over the K-user power simplex (genome = proportions of the
/// full budget). Tournament selection, blend crossover, per-gene Gaussian
/// mutation, elitism, simplex projection after every operator. The equal
/// split is always injected into the initial population, so the returned
/// utility is never below it. Deterministic given (scenario seed, config):
/// every child draws from a substream keyed by (generation, index).
inline AllocationResult rcga_optimize(
    const Scenario& sc, const RcgaConfig& cfg, const BepModel& bep,
    PriorityScheme scheme = PriorityScheme::fused,
    const std::vector<std::vector<double>>& extra_seeds = {},
    RcgaTrace* trace = nullptr) {
    sc.validate();
    cfg.validate();
    const std::size_t K = sc.n_users();
    const double p_total = sc.budget.p_total();
    Evaluator ev(sc, scheme, bep);

    rng::Stream root(cfg.seed ? cfg.seed : sc.seed,
                     rng::fnv1a(rng::kFnvOffset, 0x72636761ULL));  // "rcga"

    auto fitness = [&](const std::vector<double>& genome) {
        std::vector<double> powers(K);
        for (std::size_t k = 0; k < K; ++k) powers[k] = genome[k] * p_total;
        return ev.utility(powers);
    };

    std::vector<std::vector<double>> pop;
    pop.reserve(cfg.population);
    pop.emplace_back(K, 1.0 / K);  // equal split, always present
    for (const auto& s : extra_seeds) {
        if (s.size() != K) throw domain_error("rcga_optimize: bad seed genome size");
        auto g = s;
        detail::project_simplex(g);
        pop.push_back(std::move(g));
        if (static_cast<int>(pop.size()) == cfg.population) break;
    }
    {
        rng::Stream init = root.derive(0);
        while (static_cast<int>(pop.size()) < cfg.population) {
            std::vector<double> g(K);
            for (double& v : g) v = init.exponential();  // uniform on the simplex
            detail::project_simplex(g);
            pop.push_back(std::move(g));
        }
    }

    std::vector<double> fit(pop.size());
    for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);

    std::vector<double> best = pop[0];
    double best_fit = fit[0];
    auto note_best = [&]() {
        for (std::size_t i = 0; i < pop.size(); ++i)
            if (fit[i] > best_fit) {
                best_fit = fit[i];
                best = pop[i];
            }
    };
    note_best();
    if (trace) trace->best_per_generation.push_back(best_fit);

    std::vector<std::size_t> order(pop.size());
    for (int gen = 1; gen <= cfg.max_iter; ++gen) {
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return fit[a] > fit[b]; });
        std::vector<std::vector<double>> next;
        next.reserve(pop.size());
        for (int e = 0; e < cfg.elitism; ++e) next.push_back(pop[order[e]]);
        while (static_cast<int>(next.size()) < cfg.population) {
            rng::Stream cs = root.derive(static_cast<std::uint64_t>(gen),
                                         static_cast<std::uint64_t>(next.size()));
            auto pick = [&]() -> const std::vector<double>& {
                std::size_t bi = static_cast<std::size_t>(cs.u01() * pop.size()) %
                                 pop.size();
                for (int t = 1; t < cfg.tournament; ++t) {
                    std::size_t c = static_cast<std::size_t>(cs.u01() * pop.size()) %
                                    pop.size();
                    if (fit[c] > fit[bi]) bi = c;
                }
                return pop[bi];
            };
            const auto& p1 = pick();
            const auto& p2 = pick();
            std::vector<double> child(K);
            for (std::size_t k = 0; k < K; ++k) {
                const double u = -cfg.blend + (1.0 + 2.0 * cfg.blend) * cs.u01();
                child[k] = u * p1[k] + (1.0 - u) * p2[k];
            }
            for (std::size_t k = 0; k < K; ++k)
                if (cs.u01() < cfg.mutation_prob)
                    child[k] += cfg.mutation_sigma * cs.normal();
            detail::project_simplex(child);
            next.push_back(std::move(child));
        }
        pop.swap(next);
        for (std::size_t i = 0; i < pop.size(); ++i) fit[i] = fitness(pop[i]);
        note_best();
        if (trace) trace->best_per_generation.push_back(best_fit);
    }

    std::vector<double> powers(K);
    for (std::size_t k = 0; k < K; ++k) powers[k] = best[k] * p_total;
    return ev.evaluate(powers);
}

}  // namespace semcom::alloc
