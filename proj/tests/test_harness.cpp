#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "semcom/harness/config.hpp"
#include "semcom/harness/csv.hpp"
#include "semcom/harness/mc_validate.hpp"
#include "semcom/harness/runners.hpp"

using namespace semcom;
using namespace semcom::harness;
using doctest::Approx;

namespace {

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

}  // namespace

TEST_CASE("default config carries the stock channel block") {
    const ScenarioConfig c = default_config();
    REQUIRE(c.users.size() == 3);
    CHECK(c.users[0].fading.m_f == 2.0);
    CHECK(c.users[1].fading.m_s == 4.0);
    CHECK(c.users[2].fading.m_f == 5.0);
    CHECK(c.users[0].fading.z_bar == Approx(std::pow(10.0, -0.3)));
    CHECK(c.users[0].interference.eta == Approx(std::pow(10.0, -0.3)));
    CHECK(c.users[0].interference.p_i == 2.0);
    CHECK(c.users[0].geometry.n_antennas == 3);
    CHECK(c.users[0].geometry.distance == 10.0);
    CHECK(c.users[0].modulation.lambda1 == 1.0);
    CHECK(c.users[0].modulation.lambda2 == 0.5);
    CHECK(c.budget.p_total() == Approx(3e4));
    CHECK(c.fusion.alpha == 0.2);
}

TEST_CASE("config parsing: unit tags and overrides") {
    const json j = json::parse(R"({
        "seed": 7,
        "users": [
            {"fading": {"m_f": 3.5, "z_bar": 0.25},
             "interference": {"eta_db": -6.0}},
            {}
        ],
        "budget": {"w_a": 5000},
        "fusion": {"alpha": 0.4, "convention": "eq17"},
        "rcga": {"population": 10, "max_iter": 4}
    })");
    const ScenarioConfig c = parse_config(j);
    CHECK(c.seed == 7);
    REQUIRE(c.users.size() == 2);
    CHECK(c.users[0].fading.m_f == 3.5);
    CHECK(c.users[0].fading.z_bar == 0.25);
    CHECK(c.users[0].interference.eta == Approx(std::pow(10.0, -0.6)));
    CHECK(c.users[1].fading.m_f == 2.0);  // base default for index 1
    CHECK(c.budget.w_a == 5000.0);
    CHECK(c.fusion.convention == sem::FuseConvention::eq17);
    CHECK(c.rcga.population == 10);

    CHECK_THROWS_AS(parse_config(json::parse(
                        R"({"users": [{"fading": {"z_bar": 1.0, "z_bar_db": 0.0}}]})")),
                    parse_error);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"fusion": {"convention": "x"}})")),
                    parse_error);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"mc": {"granularity": "weird"}})")),
                    parse_error);
    CHECK_THROWS_AS(parse_config(json::parse(R"({"users": []})")), parse_error);
}

TEST_CASE("scenario hash is stable and input-sensitive") {
    const json a = json::parse(R"({"seed": 1})");
    const json b = json::parse(R"({"seed": 2})");
    CHECK(scenario_hash(parse_config(a)) == scenario_hash(parse_config(a)));
    CHECK(scenario_hash(parse_config(a)) != scenario_hash(parse_config(b)));
}

TEST_CASE("build_scenario from a saved dataset path") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "semcom_cfg_ds";
    fs::remove_all(dir);
    sem::SynthSpec ss;
    ss.n_images = 3;
    const auto manifest = sem::save_dataset(sem::synth_dataset(ss, 9), dir);
    json j;
    j["dataset"]["path"] = manifest.string();
    const ScenarioConfig c = parse_config(j);
    const alloc::Scenario sc = build_scenario(c);
    CHECK(sc.dataset.images.size() == 3);
    fs::remove_all(dir);
}

TEST_CASE("csv output is byte-stable") {
    namespace fs = std::filesystem;
    Table t;
    t.name = "stability_check";
    t.comments = {"seed: 1"};
    t.columns = {"a", "b"};
    t.add_row({1.0, 0.1234567890123});
    t.add_row({-2.5e-11, 3.0});
    const fs::path dir = fs::temp_directory_path() / "semcom_csv";
    fs::remove_all(dir);
    const auto p1 = write_csv(t, dir / "x");
    const auto p2 = write_csv(t, dir / "y");
    CHECK(slurp(p1) == slurp(p2));
    CHECK(slurp(p1).find("0.123456789012") != std::string::npos);
    fs::remove_all(dir);
}

TEST_CASE("comm cost reproduces the reported byte counts") {
    const ScenarioConfig c = default_config();
    const CommCostReport r = run_comm_cost(c);
    CHECK(std::fabs(r.vanilla_mb - 224.8) <= 0.01);
    CHECK(std::fabs(r.semantic_mb - 81.29) <= 0.01);
    CHECK(r.triplet_kb == Approx(10.476).epsilon(1e-12));
    CHECK(std::lround(r.savings * 100.0) == 64);
}

TEST_CASE("op-curve runner: monotone columns, mc agrees with quad") {
    ScenarioConfig c = default_config();
    c.op_curve.m_f_grid = {2.6};
    c.op_curve.p_dbw_min = 5.0;
    c.op_curve.p_dbw_max = 25.0;
    c.op_curve.p_dbw_step = 5.0;
    c.op_curve.mc_samples = 50000;
    c.threads = 2;
    const Table t = run_op_curve(c);
    REQUIRE(t.rows.size() == 5);
    double prev_q = 1.1;
    for (const auto& r : t.rows) {
        const double q = r[2], mc = r[6], se = r[7];
        CHECK(q < prev_q);
        prev_q = q;
        CHECK(std::fabs(mc - q) < 4.0 * se + 1e-9);
    }
}

TEST_CASE("op-curve runner is thread-count invariant") {
    ScenarioConfig c = default_config();
    c.op_curve.m_f_grid = {1.5, 4.0};
    c.op_curve.p_dbw_min = 10.0;
    c.op_curve.p_dbw_max = 20.0;
    c.op_curve.p_dbw_step = 5.0;
    c.op_curve.mc_samples = 20000;
    c.threads = 1;
    const Table a = run_op_curve(c);
    c.threads = 4;
    const Table b = run_op_curve(c);
    REQUIRE(a.rows.size() == b.rows.size());
    for (std::size_t i = 0; i < a.rows.size(); ++i) CHECK(a.rows[i] == b.rows[i]);
}

TEST_CASE("alpha sweep: alpha = 1 equals the objective benchmark; monotone in P") {
    ScenarioConfig c = default_config();
    c.alpha_sweep.alpha_grid = {0.0, 0.5, 1.0};
    c.alpha_sweep.p_grid = {30000.0, 60000.0};
    c.alpha_sweep.n_images = 4;
    c.alpha_sweep.triplets_per_image = 5;
    c.rcga.population = 16;
    c.rcga.max_iter = 5;
    c.bep_table_nodes = 50;
    const Table t = run_alpha_sweep(c);
    REQUIRE(t.rows.size() == 6);
    for (const auto& r : t.rows) {
        if (r[0] == 1.0) CHECK(r[2] == r[4]);  // fused(1.0) == oa, bitwise
        CHECK(r[2] > 0.0);
        CHECK(r[3] > 0.0);
    }
    // rows are (alpha outer, P ascending inner); utility non-decreasing in P
    for (std::size_t i = 0; i < t.rows.size(); i += 2)
        CHECK(t.rows[i + 1][2] >= t.rows[i][2] - 1e-15);
}

TEST_CASE("power sweep: warm chain makes utility monotone; scores below bounds") {
    ScenarioConfig c = default_config();
    c.power_sweep.p_grid = {20000.0, 40000.0, 80000.0};
    c.rcga.population = 20;
    c.rcga.max_iter = 6;
    c.bep_table_nodes = 60;
    const Table t = run_power_sweep(c);
    REQUIRE(t.rows.size() == 3);
    double prev_u = -1.0;
    for (const auto& r : t.rows) {
        const double utility = r.back();
        CHECK(utility >= prev_u - 1e-15);
        prev_u = utility;
        for (int k = 0; k < 3; ++k) CHECK(r[1 + k] <= r[4 + k] + 1e-12);
    }
    // optimality gap shrinks from the first to the last grid point
    for (int k = 0; k < 3; ++k) {
        const double gap_lo = t.rows.front()[4 + k] - t.rows.front()[1 + k];
        const double gap_hi = t.rows.back()[4 + k] - t.rows.back()[1 + k];
        CHECK(gap_hi <= gap_lo + 1e-12);
    }
}

TEST_CASE("allocation surface: rcga beats the grid, equal point matches naive") {
    ScenarioConfig c = default_config();
    c.alloc_surface.resolution = 0.1;  // coarse for the unit test
    c.rcga.population = 24;
    c.rcga.max_iter = 8;
    c.bep_table_nodes = 60;
    c.threads = 2;
    const Table t = run_allocation_surface(c);
    double grid_max = 0.0;
    double rcga_u = -1.0, equal_u = -1.0, grid_equal = -1.0;
    for (const auto& r : t.rows) {
        if (r[4] == 0.0) {
            grid_max = std::max(grid_max, r[3]);
            if (std::fabs(r[0] - 1.0 / 3) < 0.04 && std::fabs(r[1] - 1.0 / 3) < 0.04)
                grid_equal = r[3];
        } else if (r[4] == 1.0) {
            rcga_u = r[3];
        } else {
            equal_u = r[3];
        }
    }
    CHECK(rcga_u >= 0.98 * grid_max);
    CHECK(equal_u > 0.0);
    CHECK(grid_equal > 0.0);
}

TEST_CASE("channel sweeps produce finite, ordered grids") {
    ScenarioConfig c = default_config();
    c.channel_sweep.m_f_grid = {2.0, 4.0};
    c.channel_sweep.m_s_grid = {2.0, 4.0};
    c.channel_sweep.d_grid = {5.0, 10.0};
    c.channel_sweep.p_i_grid = {1.0, 4.0};
    c.threads = 2;
    const Table s = run_smallscale_sweep(c);
    REQUIRE(s.rows.size() == 4);
    for (const auto& r : s.rows) {
        CHECK(std::isfinite(r[2]));
        CHECK(r[2] >= 0.0);
    }
    const Table l = run_largescale_sweep(c);
    REQUIRE(l.rows.size() == 4);
    // larger distance and stronger interference cannot help
    auto cell = [&](double d, double pi) {
        for (const auto& r : l.rows)
            if (r[0] == d && r[1] == pi) return r[2];
        return -1.0;
    };
    CHECK(cell(10.0, 1.0) <= cell(5.0, 1.0) + 1e-15);
    CHECK(cell(5.0, 4.0) <= cell(5.0, 1.0) + 1e-15);
}

TEST_CASE("mc_end_to_end: degenerate high power delivers everything") {
    ScenarioConfig c = default_config();
    c.budget = {1e14, 1.0};  // effectively infinite power: no drops
    c.rcga.population = 8;
    c.rcga.max_iter = 2;
    c.bep_table_nodes = 40;
    alloc::Scenario sc = build_scenario(c);
    const alloc::TableBepModel table(sc, linkperf::BepMethod::quad, 40);
    const auto ga = alloc::rcga_optimize(sc, c.rcga, table);
    const alloc::DirectBepModel exact(sc, linkperf::BepMethod::quad);
    const alloc::Evaluator ev(sc, alloc::PriorityScheme::fused, exact);
    const auto closed = ev.evaluate(ga.user_powers);
    const auto rep = mc_end_to_end(sc, closed, closed.expected_scores,
                                   closed.utility, 100);
    for (std::size_t k = 0; k < rep.users.size(); ++k) {
        CHECK(rep.users[k].mc_stderr == 0.0);
        CHECK(rep.users[k].mc_mean == Approx(closed.expected_scores[k].s_tilde));
        CHECK(closed.expected_scores[k].s ==
              Approx(closed.expected_scores[k].s_tilde).epsilon(1e-12));
    }
    CHECK(rep.mc_utility_stderr == 0.0);
    CHECK(rep.mc_utility_mean == Approx(rep.closed_utility).epsilon(1e-12));
}

TEST_CASE("mc_end_to_end is deterministic") {
    ScenarioConfig c = default_config();
    c.rcga.population = 8;
    c.rcga.max_iter = 2;
    c.bep_table_nodes = 40;
    c.mc.replications = 300;
    const auto a = mc_validate(c, 300);
    const auto b = mc_validate(c, 300);
    CHECK(a.mc_utility_mean == b.mc_utility_mean);
    CHECK(a.users[0].mc_mean == b.users[0].mc_mean);
}
