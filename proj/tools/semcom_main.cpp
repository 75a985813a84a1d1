#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "semcom/semcom.hpp"

namespace {

using namespace semcom;

struct GlobalOpts {
    std::string config_path;
    std::string out_dir;
    std::optional<std::uint64_t> seed;
    std::optional<long> mc_samples;
    std::optional<int> threads;
};

harness::ScenarioConfig resolve_config(const GlobalOpts& g) {
    harness::ScenarioConfig cfg = g.config_path.empty()
                                      ? harness::default_config()
                                      : harness::load_config(g.config_path);
    if (!g.out_dir.empty()) cfg.out_dir = g.out_dir;
    if (g.seed) cfg.seed = *g.seed;
    if (g.threads) cfg.threads = *g.threads;
    if (g.mc_samples) {
        cfg.mc.channel_samples = *g.mc_samples;
        cfg.op_curve.mc_samples = *g.mc_samples;
    }
    return cfg;
}

void emit(const harness::Table& t, const harness::ScenarioConfig& cfg) {
    const auto path = harness::write_csv(t, cfg.out_dir);
    std::printf("wrote %s (%zu rows)\n", path.c_str(), t.rows.size());
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Link-level simulator and analysis toolkit for personalized "
                 "multi-user semantic communication over composite fading channels"};
    app.require_subcommand(1);
    app.fallthrough();  // global flags may follow the subcommand
    app.set_version_flag("--version", std::string(semcom::kVersion));

    GlobalOpts g;
    app.add_option("--config", g.config_path, "JSON configuration file");
    app.add_option("--out", g.out_dir, "Output directory (overrides config)");
    app.add_option("--seed", g.seed, "RNG seed (overrides config)");
    app.add_option("--mc-samples", g.mc_samples, "Monte Carlo channel sample budget");
    app.add_option("--threads", g.threads, "Worker thread count for sweeps");

    auto* c_op = app.add_subcommand("op-curve", "Outage probability vs transmit power");
    auto* c_alpha = app.add_subcommand("alpha-sweep", "Utility vs fusion coefficient and power");
    auto* c_power = app.add_subcommand("power-sweep", "Per-user scores vs total power");
    auto* c_surface = app.add_subcommand("alloc-surface", "Utility over the 3-user power simplex");
    auto* c_small = app.add_subcommand("smallscale", "Utility vs (m_f, m_s)");
    auto* c_large = app.add_subcommand("largescale", "Utility vs (distance, interference power)");
    auto* c_cost = app.add_subcommand("comm-cost", "Transferred-bytes comparison");
    auto* c_mc = app.add_subcommand("mc-validate", "Bit-level Monte Carlo vs closed-form scores");
    long replications_override = 0;
    c_mc->add_option("--replications", replications_override, "Replication count override");
    auto* c_synth = app.add_subcommand("synth-dataset", "Generate and save a synthetic dataset");
    auto* c_alloc = app.add_subcommand("allocate", "Run the NBS power allocation once");

    try {
        app.parse(argc, argv);
        const harness::ScenarioConfig cfg = resolve_config(g);

        if (c_op->parsed()) {
            emit(harness::run_op_curve(cfg), cfg);
        } else if (c_alpha->parsed()) {
            emit(harness::run_alpha_sweep(cfg), cfg);
        } else if (c_power->parsed()) {
            emit(harness::run_power_sweep(cfg), cfg);
        } else if (c_surface->parsed()) {
            emit(harness::run_allocation_surface(cfg), cfg);
        } else if (c_small->parsed()) {
            emit(harness::run_smallscale_sweep(cfg), cfg);
        } else if (c_large->parsed()) {
            emit(harness::run_largescale_sweep(cfg), cfg);
        } else if (c_cost->parsed()) {
            const auto r = harness::run_comm_cost(cfg);
            emit(harness::comm_cost_table(cfg), cfg);
            std::printf("vanilla %.2f MB, semantic %.2f MB (%.2f KB of triplets), savings %.0f%%\n",
                        r.vanilla_mb, r.semantic_mb, r.triplet_kb, 100.0 * r.savings);
        } else if (c_mc->parsed()) {
            const long reps = replications_override > 0 ? replications_override
                                                        : cfg.mc.replications;
            const auto rep = harness::mc_validate(cfg, reps);
            emit(harness::mc_validation_table(cfg, rep), cfg);
            std::printf("utility closed %.6g vs mc %.6g +- %.2g (z = %.2f)\n",
                        rep.closed_utility, rep.mc_utility_mean,
                        rep.mc_utility_stderr, rep.utility_z);
        } else if (c_synth->parsed()) {
            const auto ds = sem::synth_dataset(cfg.synth, cfg.seed);
            const auto manifest = sem::save_dataset(ds, cfg.out_dir);
            std::printf("wrote %s (%zu images, %zu users)\n", manifest.c_str(),
                        ds.images.size(), ds.users.size());
        } else if (c_alloc->parsed()) {
            alloc::Scenario sc = harness::build_scenario(cfg);
            const alloc::TableBepModel bep(sc, linkperf::BepMethod::quad,
                                           cfg.bep_table_nodes);
            const auto ga = alloc::rcga_optimize(sc, cfg.rcga, bep);
            const auto naive = alloc::naive_allocation(sc, bep);
            harness::Table t;
            t.name = "allocation";
            t.comments = {"scenario_hash: " + harness::scenario_hash(cfg),
                          "seed: " + std::to_string(cfg.seed),
                          "utility_nbs: " + harness::format_cell(ga.utility),
                          "utility_naive: " + harness::format_cell(naive.utility)};
            t.columns = {"user", "power_w", "share", "score", "score_bound"};
            for (std::size_t k = 0; k < ga.user_powers.size(); ++k)
                t.add_row({static_cast<double>(k + 1), ga.user_powers[k],
                           ga.user_powers[k] / sc.budget.p_total(),
                           ga.expected_scores[k].s, ga.expected_scores[k].s_tilde});
            emit(t, cfg);
            std::printf("NBS utility %.6g (naive %.6g)\n", ga.utility, naive.utility);
        }
        return 0;
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return 0;  // --help / --version
        std::cerr << e.what() << "\n";
        return 2;
    } catch (const semcom::parse_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const semcom::domain_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const semcom::numeric_error& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << "\n";
        return 3;
    }
}
