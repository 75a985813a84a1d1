#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "semcom/allocation/evaluate.hpp"
#include "semcom/allocation/rcga.hpp"
#include "semcom/harness/config.hpp"
#include "semcom/harness/csv.hpp"
#include "semcom/harness/parallel.hpp"
#include "semcom/linkperf/outage.hpp"

namespace semcom::harness {

namespace detail {

inline std::vector<std::string> header_comments(const ScenarioConfig& c) {
    return {"scenario_hash: " + scenario_hash(c),
            "seed: " + std::to_string(c.seed)};
}

}  // namespace detail

/// Outage probability vs transmit power for each multipath parameter in the
/// grid, by all four evaluation routes.
inline Table run_op_curve(const ScenarioConfig& cfg) {
    const auto& oc = cfg.op_curve;
    Table t;
    t.name = "op_curve";
    t.comments = detail::header_comments(cfg);
    t.comments.push_back("gamma_th: " + format_cell(oc.gamma_th));
    t.columns = {"m_f",  "p_dbw", "op_quad", "op_accurate",
                 "rho",  "op_asymptotic", "op_mc", "op_mc_stderr"};
    std::vector<double> p_grid;
    for (double p = oc.p_dbw_min; p <= oc.p_dbw_max + 1e-9; p += oc.p_dbw_step)
        p_grid.push_back(p);
    const std::size_t n = oc.m_f_grid.size() * p_grid.size();
    t.rows.resize(n);
    parallel_for(n, cfg.threads, [&](std::size_t idx) {
        const double m_f = oc.m_f_grid[idx / p_grid.size()];
        const double p_dbw = p_grid[idx % p_grid.size()];
        const fading::FadingParams fp{m_f, oc.m_s, oc.z_bar};
        const fading::LinkGeometry g{oc.distance, oc.path_loss_exp, oc.n_antennas,
                                     oc.noise};
        const fading::InterferenceParams ip{oc.n_paths, oc.eta, oc.p_i};
        const auto sp = fading::SinrParams::make(fp, g, ip,
                                                 std::pow(10.0, p_dbw / 10.0));
        const double q = linkperf::outage_probability(oc.gamma_th, sp,
                                                      linkperf::OutageMethod::quad);
        const auto acc = fading::sinr_cdf_accurate(oc.gamma_th, sp);
        const double asy = fading::sinr_cdf_asymptotic(oc.gamma_th, sp);
        rng::Stream stream(cfg.seed, rng::fnv1a(rng::kFnvOffset, 0x6f70ULL));
        rng::Stream sub = stream.derive(idx);
        const auto mc = linkperf::outage_mc(oc.gamma_th, sp, oc.mc_samples, sub);
        t.rows[idx] = {m_f, p_dbw, q, acc.value, acc.rho, asy, mc.value, mc.stderr_};
    });
    return t;
}

/// The constructed alpha-sweep scenario family: subjective saliency that
/// misses the query entities part of the time, against a reconfigurable
/// coding block, so fusing in objective attention has something to recover.
inline alloc::Scenario alpha_family_scenario(const ScenarioConfig& cfg,
                                             double alpha, double w_a) {
    const auto& as = cfg.alpha_sweep;
    sem::SynthSpec ss = cfg.synth;
    ss.n_images = as.n_images;
    ss.triplets_per_image = as.triplets_per_image;
    ss.saliency_hit = as.saliency_hit;
    alloc::Scenario sc;
    sc.links = cfg.users;
    for (auto& l : sc.links) l.coding = {as.d_t, as.d_e};
    sc.dataset = sem::synth_dataset(ss, cfg.seed);
    sc.budget = {w_a, cfg.budget.t_1};
    sc.fusion = {alpha, cfg.fusion.convention};
    sc.seed = cfg.seed;
    return sc;
}

/// Utility of the NBS allocation over the (alpha, P) grid, with the naive
/// and objective-only references at each P. Within one alpha the powers run
/// ascending and each GA is warm-started with the previous optimum, so the
/// utility column is non-decreasing in P by construction.
inline Table run_alpha_sweep(const ScenarioConfig& cfg) {
    const auto& as = cfg.alpha_sweep;
    Table t;
    t.name = "alpha_sweep";
    t.comments = detail::header_comments(cfg);
    t.columns = {"alpha", "p_total", "utility_fused", "utility_naive", "utility_oa"};
    std::vector<double> p_grid = as.p_grid;
    std::sort(p_grid.begin(), p_grid.end());
    const auto model_sc = alpha_family_scenario(cfg, 0.0, p_grid.back());
    const alloc::TableBepModel bep(model_sc, linkperf::BepMethod::quad,
                                   cfg.bep_table_nodes);
    auto chain = [&](double alpha, alloc::PriorityScheme scheme) {
        std::vector<double> utilities;
        std::vector<std::vector<double>> warm;
        for (double p : p_grid) {
            const auto sc = alpha_family_scenario(cfg, alpha, p);
            const auto ga = alloc::rcga_optimize(sc, cfg.rcga, bep, scheme, warm);
            std::vector<double> props(sc.n_users());
            for (std::size_t k = 0; k < props.size(); ++k)
                props[k] = ga.user_powers[k] / p;
            warm = {props};
            utilities.push_back(ga.utility);
        }
        return utilities;
    };
    const auto oa = chain(1.0, alloc::PriorityScheme::objective);
    std::vector<double> naive_u;
    for (double p : p_grid)
        naive_u.push_back(
            alloc::naive_allocation(alpha_family_scenario(cfg, 0.0, p), bep).utility);
    std::vector<std::vector<double>> per_alpha(as.alpha_grid.size());
    parallel_for(as.alpha_grid.size(), cfg.threads, [&](std::size_t i) {
        per_alpha[i] = chain(as.alpha_grid[i], alloc::PriorityScheme::fused);
    });
    for (std::size_t i = 0; i < as.alpha_grid.size(); ++i)
        for (std::size_t j = 0; j < p_grid.size(); ++j)
            t.rows.push_back({as.alpha_grid[i], p_grid[j], per_alpha[i][j],
                              naive_u[j], oa[j]});
    return t;
}

/// Per-user expected score vs total power under the NBS allocation, with the
/// drop-free upper bounds. Successive powers warm-start the GA with the
/// previous optimum, which also makes the utility column monotone by
/// construction.
inline Table run_power_sweep(const ScenarioConfig& cfg) {
    Table t;
    t.name = "power_sweep";
    t.comments = detail::header_comments(cfg);
    alloc::Scenario base = build_scenario(cfg);
    const std::size_t K = base.n_users();
    t.columns = {"p_total"};
    for (std::size_t k = 1; k <= K; ++k) t.columns.push_back("score_u" + std::to_string(k));
    for (std::size_t k = 1; k <= K; ++k) t.columns.push_back("bound_u" + std::to_string(k));
    t.columns.push_back("utility");
    auto grid = cfg.power_sweep.p_grid;
    std::sort(grid.begin(), grid.end());
    alloc::Scenario model_sc = base;
    model_sc.budget = {grid.back(), cfg.budget.t_1};
    const alloc::TableBepModel bep(model_sc, linkperf::BepMethod::quad,
                                   cfg.bep_table_nodes);
    std::vector<std::vector<double>> warm;
    for (double p : grid) {
        alloc::Scenario sc = base;
        sc.budget = {p, cfg.budget.t_1};
        const auto ga = alloc::rcga_optimize(sc, cfg.rcga, bep,
                                             alloc::PriorityScheme::fused, warm);
        std::vector<double> props(K);
        for (std::size_t k = 0; k < K; ++k) props[k] = ga.user_powers[k] / p;
        warm = {props};
        std::vector<double> row = {p};
        for (const auto& s : ga.expected_scores) row.push_back(s.s);
        for (const auto& s : ga.expected_scores) row.push_back(s.s_tilde);
        row.push_back(ga.utility);
        t.rows.push_back(std::move(row));
    }
    return t;
}

/// Utility over the full-power simplex (K = 3) plus the RCGA and equal-split
/// points. kind: 0 = grid, 1 = rcga, 2 = equal split.
inline Table run_allocation_surface(const ScenarioConfig& cfg) {
    alloc::Scenario sc = build_scenario(cfg);
    if (sc.n_users() != 3)
        throw domain_error("run_allocation_surface: needs exactly 3 users");
    Table t;
    t.name = "alloc_surface";
    t.comments = detail::header_comments(cfg);
    t.columns = {"w1", "w2", "w3", "utility", "kind"};
    const alloc::TableBepModel bep(sc, linkperf::BepMethod::quad, cfg.bep_table_nodes);
    const alloc::Evaluator ev(sc, alloc::PriorityScheme::fused, bep);
    const double p_total = sc.budget.p_total();
    const int R = std::max(1, static_cast<int>(std::lround(1.0 / cfg.alloc_surface.resolution)));
    std::vector<std::pair<int, int>> pts;
    for (int i = 0; i <= R; ++i)
        for (int j = 0; i + j <= R; ++j) pts.emplace_back(i, j);
    t.rows.resize(pts.size());
    parallel_for(pts.size(), cfg.threads, [&](std::size_t idx) {
        const double w1 = static_cast<double>(pts[idx].first) / R;
        const double w2 = static_cast<double>(pts[idx].second) / R;
        const double w3 = std::max(0.0, 1.0 - w1 - w2);
        const double u = ev.utility({w1 * p_total, w2 * p_total, w3 * p_total});
        t.rows[idx] = {w1, w2, w3, u, 0.0};
    });
    const auto ga = alloc::rcga_optimize(sc, cfg.rcga, bep);
    t.rows.push_back({ga.user_powers[0] / p_total, ga.user_powers[1] / p_total,
                      ga.user_powers[2] / p_total, ga.utility, 1.0});
    const auto naive = alloc::naive_allocation(sc, bep);
    t.rows.push_back({1.0 / 3, 1.0 / 3, 1.0 / 3, naive.utility, 2.0});
    return t;
}

namespace detail {

inline alloc::Scenario channel_sweep_scenario(const ScenarioConfig& cfg) {
    const auto& cs = cfg.channel_sweep;
    sem::SynthSpec ss = cfg.synth;
    ss.n_images = cs.n_images;
    ss.triplets_per_image = std::max(ss.n_users + 1, cs.triplets_per_image);
    alloc::Scenario sc;
    sc.links = cfg.users;
    for (auto& l : sc.links) {
        l.geometry.distance = cs.baseline_distance;
        l.geometry.n_antennas = cs.n_antennas;
    }
    sc.dataset = sem::synth_dataset(ss, cfg.seed);
    sc.budget = {cs.per_user_power * static_cast<double>(cfg.users.size()),
                 1.0};
    sc.fusion = cfg.fusion;
    sc.seed = cfg.seed;
    return sc;
}

inline double fixed_power_utility(const alloc::Scenario& sc, double per_user_power) {
    const alloc::DirectBepModel bep(sc, linkperf::BepMethod::quad);
    const alloc::Evaluator ev(sc, alloc::PriorityScheme::fused, bep);
    return ev.utility(std::vector<double>(sc.n_users(), per_user_power));
}

}  // namespace detail

/// Utility grid over the small-scale channel parameters (m_f, m_s) at fixed
/// per-user power.
inline Table run_smallscale_sweep(const ScenarioConfig& cfg) {
    const auto& cs = cfg.channel_sweep;
    Table t;
    t.name = "smallscale_sweep";
    t.comments = detail::header_comments(cfg);
    t.columns = {"m_f", "m_s", "utility"};
    const alloc::Scenario base = detail::channel_sweep_scenario(cfg);
    const std::size_t n = cs.m_f_grid.size() * cs.m_s_grid.size();
    t.rows.resize(n);
    parallel_for(n, cfg.threads, [&](std::size_t idx) {
        const double m_f = cs.m_f_grid[idx / cs.m_s_grid.size()];
        const double m_s = cs.m_s_grid[idx % cs.m_s_grid.size()];
        alloc::Scenario sc = base;
        for (auto& l : sc.links) {
            l.fading.m_f = m_f;
            l.fading.m_s = m_s;
        }
        t.rows[idx] = {m_f, m_s, detail::fixed_power_utility(sc, cs.per_user_power)};
    });
    return t;
}

/// Utility grid over distance and interference power at fixed per-user power.
inline Table run_largescale_sweep(const ScenarioConfig& cfg) {
    const auto& cs = cfg.channel_sweep;
    Table t;
    t.name = "largescale_sweep";
    t.comments = detail::header_comments(cfg);
    t.columns = {"distance_m", "p_i_w", "utility"};
    const alloc::Scenario base = detail::channel_sweep_scenario(cfg);
    const std::size_t n = cs.d_grid.size() * cs.p_i_grid.size();
    t.rows.resize(n);
    parallel_for(n, cfg.threads, [&](std::size_t idx) {
        const double d = cs.d_grid[idx / cs.p_i_grid.size()];
        const double p_i = cs.p_i_grid[idx % cs.p_i_grid.size()];
        alloc::Scenario sc = base;
        for (auto& l : sc.links) {
            l.geometry.distance = d;
            l.interference.p_i = p_i;
        }
        t.rows[idx] = {d, p_i, detail::fixed_power_utility(sc, cs.per_user_power)};
    });
    return t;
}

struct CommCostReport {
    double vanilla_mb = 0.0;
    double triplet_kb = 0.0;
    double download_mb = 0.0;
    double semantic_mb = 0.0;
    double savings = 0.0;
};

/// Bytes-on-air comparison: send everything vs send triplets and only the
/// matched downloads. Decimal MB (1e6 bytes).
inline CommCostReport run_comm_cost(const ScenarioConfig& cfg) {
    const auto& cc = cfg.comm_cost;
    CommCostReport r;
    r.vanilla_mb = cc.n_images * cc.image_mb * cc.n_users;
    const double triplet_mb = cc.n_triplets * cc.triplet_bytes / 1e6;
    r.triplet_kb = cc.n_triplets * cc.triplet_bytes / 1e3;
    r.download_mb = cc.n_downloads * cc.image_mb;
    r.semantic_mb = r.download_mb + triplet_mb;
    r.savings = 1.0 - r.semantic_mb / r.vanilla_mb;
    return r;
}

inline Table comm_cost_table(const ScenarioConfig& cfg) {
    const CommCostReport r = run_comm_cost(cfg);
    Table t;
    t.name = "comm_cost";
    t.comments = detail::header_comments(cfg);
    t.comments.push_back(
        "columns: vanilla_mb, triplet_kb, download_mb, semantic_mb, savings");
    t.columns = {"vanilla_mb", "triplet_kb", "download_mb", "semantic_mb", "savings"};
    t.add_row({r.vanilla_mb, r.triplet_kb, r.download_mb, r.semantic_mb, r.savings});
    return t;
}

}  // namespace semcom::harness
