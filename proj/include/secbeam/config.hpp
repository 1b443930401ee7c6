// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <cstdint>
#include <string>

#include "json.hpp"
#include "secbeam/conic.hpp"
#include "secbeam/montecarlo.hpp"

namespace secbeam {

// JSON run configuration ("schema": 1). Power is accepted in dB here and
// converted to linear exactly once; everything downstream is linear watts.

struct TaskConfig {
    std::string name;  // powermin | maxrate | verify | sweep | selftest
    double rate = 1.0;
    int samples = 10000;
    double tol = 1e-3;
    SweepConfig sweep;
};

struct RandomScenario {
    std::uint64_t seed = 0;
    double eps_b = 0.0;
    double eps_e = 0.1;
};

struct RunConfig {
    SystemConfig system;
    ScenarioVariant variant = ScenarioVariant::StatisticalEcsi;
    bool scenario_is_random = false;
    RandomScenario random;
    ScenarioSpec scenario;  // populated when channels are given explicitly
    TaskConfig task;
    SolverOptions solver;
    std::string out_path;
};

double db_to_linear(double db);

RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

/// Explicit channels pass through; a "random" scenario is drawn from the
/// given seed (the config's own unless overridden by the command line).
ScenarioSpec resolve_scenario(const RunConfig& rc, std::uint64_t seed);

/// { "layout": "interleaved_re_im", "data": [re0, im0, re1, im1, ...] }
nlohmann::json cvector_json(const CVector& v);
CVector cvector_from_json(const nlohmann::json& j);

/// Same layout plus "side"; entries row-major.
nlohmann::json cmatrix_json(const CMatrix& m);
CMatrix cmatrix_from_json(const nlohmann::json& j);

ScenarioVariant variant_from_string(const std::string& s);
const char* to_string(ScenarioVariant v);

SweepConfig::Axis axis_from_string(const std::string& s);

}  // namespace secbeam
