// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/config.hpp"

#include <cmath>
#include <fstream>

#include "secbeam/errors.hpp"

namespace secbeam {

using nlohmann::json;

double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }

json cvector_json(const CVector& v) {
    json data = json::array();
    for (int i = 0; i < v.size(); ++i) {
        data.push_back(v(i).real());
        data.push_back(v(i).imag());
    }
    return json{{"layout", "interleaved_re_im"}, {"data", data}};
}

namespace {

const json& interleaved_data(const json& j) {
    if (!j.is_object() || j.value("layout", "") != "interleaved_re_im")
        throw BadConfig("expected an object with layout \"interleaved_re_im\"");
    const json& data = j.at("data");
    if (!data.is_array() || data.size() % 2 != 0)
        throw BadConfig("interleaved re/im data must have even length");
    return data;
}

}  // namespace

CVector cvector_from_json(const json& j) {
    const json& data = interleaved_data(j);
    CVector v(data.size() / 2);
    for (int i = 0; i < v.size(); ++i)
        v(i) = Complex(data[2 * i].get<double>(), data[2 * i + 1].get<double>());
    return v;
}

json cmatrix_json(const CMatrix& m) {
    json data = json::array();
    for (int r = 0; r < m.rows(); ++r)
        for (int c = 0; c < m.cols(); ++c) {
            data.push_back(m(r, c).real());
            data.push_back(m(r, c).imag());
        }
    return json{{"layout", "interleaved_re_im"},
                {"side", static_cast<int>(m.rows())},
                {"data", data}};
}

CMatrix cmatrix_from_json(const json& j) {
    const json& data = interleaved_data(j);
    const int side = j.at("side").get<int>();
    if (side <= 0 || static_cast<size_t>(side) * side * 2 != data.size())
        throw BadConfig("matrix side does not match data length");
    CMatrix m(side, side);
    int i = 0;
    for (int r = 0; r < side; ++r)
        for (int c = 0; c < side; ++c, i += 2)
            m(r, c) = Complex(data[i].get<double>(), data[i + 1].get<double>());
    return m;
}

ScenarioVariant variant_from_string(const std::string& s) {
    if (s == "statistical") return ScenarioVariant::StatisticalEcsi;
    if (s == "imperfect_ecsi") return ScenarioVariant::ImperfectEcsi;
    if (s == "imperfect_both") return ScenarioVariant::ImperfectBoth;
    throw BadConfig("unknown scenario variant: " + s);
}

const char* to_string(ScenarioVariant v) {
    switch (v) {
        case ScenarioVariant::StatisticalEcsi: return "statistical";
        case ScenarioVariant::ImperfectEcsi: return "imperfect_ecsi";
        case ScenarioVariant::ImperfectBoth: return "imperfect_both";
    }
    return "?";
}

SweepConfig::Axis axis_from_string(const std::string& s) {
    if (s == "power_dB") return SweepConfig::Axis::PowerDb;
    if (s == "eps_b") return SweepConfig::Axis::EpsB;
    if (s == "eps_e") return SweepConfig::Axis::EpsE;
    if (s == "p_out") return SweepConfig::Axis::POut;
    throw BadConfig("unknown sweep axis: " + s);
}

namespace {

SystemConfig parse_system(const json& j) {
    SystemConfig cfg;
    cfg.n_tx = j.at("n_tx").get<int>();
    cfg.noise_bob = j.value("noise_bob", 1.0);
    if (j.contains("noise_eves"))
        cfg.noise_eves = j.at("noise_eves").get<std::vector<double>>();
    cfg.power_budget = db_to_linear(j.at("power_dB").get<double>());
    if (j.contains("outage")) {
        const json& o = j.at("outage");
        if (o.is_number())
            cfg.outage_probs.assign(cfg.noise_eves.size(), o.get<double>());
        else
            cfg.outage_probs = o.get<std::vector<double>>();
    }
    if (cfg.n_tx < 1) throw BadConfig("n_tx must be at least 1");
    if (cfg.noise_eves.empty()) throw BadConfig("at least one eavesdropper noise is required");
    if (cfg.outage_probs.size() != cfg.noise_eves.size())
        throw BadConfig("outage budgets must match the number of eavesdroppers");
    return cfg;
}

SweepConfig parse_sweep(const json& j, const RunConfig& rc) {
    SweepConfig sc;
    sc.axis = axis_from_string(j.at("axis").get<std::string>());
    sc.grid = j.at("grid").get<std::vector<double>>();
    sc.n_instances = j.value("n_instances", sc.n_instances);
    sc.outage_samples = j.value("outage_samples", sc.outage_samples);
    sc.rate_tol = j.value("rate_tol", sc.rate_tol);
    sc.variant = rc.variant;
    sc.n_tx = rc.system.n_tx;
    sc.n_eves = rc.system.n_eves();
    sc.power_db = j.value("power_dB",
                          10.0 * std::log10(rc.system.power_budget));
    sc.eps_b = j.value("eps_b", rc.random.eps_b);
    sc.eps_e = j.value("eps_e", rc.random.eps_e);
    sc.p_out = j.value("p_out", rc.system.outage_probs.empty()
                                    ? 0.05
                                    : rc.system.outage_probs.front());
    return sc;
}

}  // namespace

RunConfig parse_run_config(const json& j) {
    if (j.value("schema", 0) != 1) throw BadConfig("unsupported config schema version");
    RunConfig rc;
    rc.system = parse_system(j.at("system"));

    const json& sc = j.at("scenario");
    rc.variant = variant_from_string(sc.at("variant").get<std::string>());
    if (sc.contains("random")) {
        rc.scenario_is_random = true;
        const json& r = sc.at("random");
        rc.random.seed = r.value("seed", 0ULL);
        rc.random.eps_b = r.value("eps_b", 0.0);
        rc.random.eps_e = r.value("eps_e", 0.1);
    } else {
        rc.scenario.variant = rc.variant;
        rc.scenario.h = cvector_from_json(sc.at("h"));
        if (sc.contains("g_est"))
            for (const json& g : sc.at("g_est"))
                rc.scenario.g_est.push_back(cvector_from_json(g));
        for (const json& c : sc.at("eve_covs"))
            rc.scenario.eve_covs.push_back(cmatrix_from_json(c));
        if (sc.contains("bob_cov"))
            rc.scenario.bob_cov = cmatrix_from_json(sc.at("bob_cov"));
        rc.scenario = validate(rc.system, rc.scenario);
    }

    const json& t = j.at("task");
    rc.task.name = t.at("name").get<std::string>();
    rc.task.rate = t.value("rate", rc.task.rate);
    rc.task.samples = t.value("samples", rc.task.samples);
    rc.task.tol = t.value("tol", rc.task.tol);
    if (t.contains("sweep")) rc.task.sweep = parse_sweep(t.at("sweep"), rc);
    else if (rc.task.name == "sweep")
        throw BadConfig("sweep task needs a task.sweep block");

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        rc.solver.feas_tol = s.value("feas_tol", rc.solver.feas_tol);
        rc.solver.gap_tol = s.value("gap_tol", rc.solver.gap_tol);
        rc.solver.max_iter = s.value("max_iter", rc.solver.max_iter);
    }
    if (j.contains("output")) rc.out_path = j.at("output").value("path", "");
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw Error("cannot open config: " + path);
    json j;
    try {
        is >> j;
    } catch (const json::exception& e) {
        throw BadConfig(std::string("config is not valid JSON: ") + e.what());
    }
    return parse_run_config(j);
}

ScenarioSpec resolve_scenario(const RunConfig& rc, std::uint64_t seed) {
    if (!rc.scenario_is_random) return rc.scenario;
    RngStream rng(seed, 0x5ce7a110);
    return random_spec(rc.variant, rc.system.n_tx, rc.system.n_eves(),
                       rc.random.eps_b, rc.random.eps_e, rng);
}

}  // namespace secbeam
