// SPDX-License-Identifier: Apache-2.0

#include "secbeam/config.hpp"

#include <cmath>

#include "doctest.h"
#include "secbeam/errors.hpp"

using namespace secbeam;
using nlohmann::json;

namespace {

json base_config() {
    return json{
        {"schema", 1},
        {"system",
         {{"n_tx", 3},
          {"noise_bob", 1.0},
          {"noise_eves", {1.0, 2.0}},
          {"power_dB", 20.0},
          {"outage", 0.05}}},
        {"scenario",
         {{"variant", "statistical"},
          {"random", {{"seed", 42}, {"eps_e", 0.2}}}}},
        {"task", {{"name", "maxrate"}, {"tol", 1e-3}}},
    };
}

}  // namespace

TEST_CASE("dB conversion hand values") {
    CHECK(db_to_linear(0.0) == doctest::Approx(1.0));
    CHECK(db_to_linear(10.0) == doctest::Approx(10.0));
    CHECK(db_to_linear(20.0) == doctest::Approx(100.0));
    CHECK(db_to_linear(-3.0) == doctest::Approx(0.501187233627));
}

TEST_CASE("complex vector round-trips through the interleaved layout") {
    CVector v(2);
    v << Complex(1.5, -0.25), Complex(0.0, 2.0);
    const json j = cvector_json(v);
    CHECK(j.at("layout") == "interleaved_re_im");
    CHECK(j.at("data") == json({1.5, -0.25, 0.0, 2.0}));
    const CVector back = cvector_from_json(j);
    CHECK((back - v).norm() == 0.0);
}

TEST_CASE("complex matrix round-trips and rejects bad shapes") {
    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(0.5, 0.25), Complex(0.5, -0.25), Complex(2, 0);
    const json j = cmatrix_json(m);
    CHECK(j.at("side") == 2);
    const CMatrix back = cmatrix_from_json(j);
    CHECK((back - m).norm() == 0.0);

    json bad = j;
    bad["side"] = 3;
    CHECK_THROWS_AS(cmatrix_from_json(bad), BadConfig);
    bad = j;
    bad["layout"] = "something_else";
    CHECK_THROWS_AS(cmatrix_from_json(bad), BadConfig);
}

TEST_CASE("parse_run_config reads the random-scenario form") {
    const RunConfig rc = parse_run_config(base_config());
    CHECK(rc.system.n_tx == 3);
    CHECK(rc.system.n_eves() == 2);
    CHECK(rc.system.power_budget == doctest::Approx(100.0));
    CHECK(rc.system.outage_probs == std::vector<double>{0.05, 0.05});
    CHECK(rc.variant == ScenarioVariant::StatisticalEcsi);
    CHECK(rc.scenario_is_random);
    CHECK(rc.random.seed == 42);
    CHECK(rc.random.eps_e == doctest::Approx(0.2));
    CHECK(rc.task.name == "maxrate");
    CHECK(rc.task.tol == doctest::Approx(1e-3));

    const ScenarioSpec a = resolve_scenario(rc, 7);
    const ScenarioSpec b = resolve_scenario(rc, 7);
    const ScenarioSpec c = resolve_scenario(rc, 8);
    CHECK((a.h - b.h).norm() == 0.0);
    CHECK((a.h - c.h).norm() > 0.0);
    CHECK(a.eve_covs.size() == 2);
}

TEST_CASE("explicit channels are validated at parse time") {
    json j = base_config();
    j["scenario"] = json{
        {"variant", "imperfect_ecsi"},
        {"h", cvector_json(CVector::Ones(3))},
        {"g_est", {cvector_json(CVector::Ones(3))}},
        {"eve_covs", {cmatrix_json(0.1 * CMatrix::Identity(3, 3))}},
    };
    j["system"]["noise_eves"] = {1.0};
    const RunConfig rc = parse_run_config(j);
    CHECK_FALSE(rc.scenario_is_random);
    CHECK(rc.scenario.g_est.size() == 1);
    const ScenarioSpec s = resolve_scenario(rc, 0);
    CHECK((s.h - CVector::Ones(3)).norm() == 0.0);

    // wrong dimension must be rejected
    j["scenario"]["h"] = cvector_json(CVector::Ones(4));
    CHECK_THROWS_AS(parse_run_config(j), DimensionMismatch);
}

TEST_CASE("schema and structural errors") {
    json j = base_config();
    j["schema"] = 2;
    CHECK_THROWS_AS(parse_run_config(j), BadConfig);

    j = base_config();
    j["scenario"]["variant"] = "oracle";
    CHECK_THROWS_AS(parse_run_config(j), BadConfig);

    j = base_config();
    j["task"]["name"] = "sweep";
    CHECK_THROWS_AS(parse_run_config(j), BadConfig);  // missing sweep block

    j = base_config();
    j["system"]["outage"] = {0.05};
    CHECK_THROWS_AS(parse_run_config(j), BadConfig);  // 1 budget, 2 Eves
}

TEST_CASE("sweep block inherits the base point from system/scenario") {
    json j = base_config();
    j["task"]["name"] = "sweep";
    j["task"]["sweep"] = json{
        {"axis", "eps_e"},
        {"grid", {0.05, 0.1, 0.2}},
        {"n_instances", 10},
        {"outage_samples", 500},
    };
    const RunConfig rc = parse_run_config(j);
    CHECK(rc.task.sweep.axis == SweepConfig::Axis::EpsE);
    CHECK(rc.task.sweep.grid.size() == 3);
    CHECK(rc.task.sweep.n_tx == 3);
    CHECK(rc.task.sweep.n_eves == 2);
    CHECK(rc.task.sweep.power_db == doctest::Approx(20.0));
    CHECK(rc.task.sweep.p_out == doctest::Approx(0.05));
    CHECK(rc.task.sweep.eps_e == doctest::Approx(0.2));
    CHECK(rc.task.sweep.variant == ScenarioVariant::StatisticalEcsi);
}

TEST_CASE("solver options and output path are forwarded") {
    json j = base_config();
    j["solver"] = json{{"feas_tol", 1e-9}, {"max_iter", 50}};
    j["output"] = json{{"path", "result.json"}};
    const RunConfig rc = parse_run_config(j);
    CHECK(rc.solver.feas_tol == doctest::Approx(1e-9));
    CHECK(rc.solver.gap_tol == doctest::Approx(1e-7));
    CHECK(rc.solver.max_iter == 50);
    CHECK(rc.out_path == "result.json");
}
