// SPDX-License-Identifier: Apache-2.0

#include "secbeam/scenario1.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "secbeam/errors.hpp"

using namespace secbeam;

namespace {

SystemConfig unit_config(int nt, int k, double p_out) {
    SystemConfig cfg;
    cfg.n_tx = nt;
    cfg.noise_bob = 1.0;
    cfg.noise_eves.assign(k, 1.0);
    cfg.power_budget = 100.0;
    cfg.outage_probs.assign(k, p_out);
    return cfg;
}

ScenarioSpec axis_spec() {
    ScenarioSpec spec;
    spec.variant = ScenarioVariant::StatisticalEcsi;
    spec.h = CVector::Zero(2);
    spec.h(0) = 1.0;
    spec.eve_covs = {CMatrix::Identity(2, 2)};
    return spec;
}

CMatrix random_psd(int n, RngStream& rng, double scale = 1.0) {
    CMatrix a(n, n);
    for (int i = 0; i < n * n; ++i) a.data()[i] = rng.cnormal();
    return CMatrix(scale * (a * a.adjoint()) / n);
}

struct RandomInstance {
    SystemConfig cfg;
    ScenarioSpec spec;
    double rate;
};

RandomInstance random_instance(int nt, int k, RngStream& rng) {
    RandomInstance inst;
    inst.cfg = unit_config(nt, k, 0.05 + 0.45 * rng.uniform());
    inst.spec.variant = ScenarioVariant::StatisticalEcsi;
    inst.spec.h = rng.cnormal_vector(nt);
    for (int i = 0; i < k; ++i) inst.spec.eve_covs.push_back(random_psd(nt, rng));
    inst.rate = 0.5 + 1.5 * rng.uniform();
    return inst;
}

}  // namespace

TEST_CASE("build_deterministic frozen 2x2 instance") {
    const SystemConfig cfg = unit_config(2, 1, 0.8);
    const S1Deterministic det = build_deterministic(cfg, axis_spec(), 1.0);
    // M = I ln(0.8) + 0.5 e1 e1^H = diag(0.27686, -0.22314), b = 0.5
    CHECK(det.M[0](0, 0).real() == doctest::Approx(0.27686).epsilon(1e-4));
    CHECK(det.M[0](1, 1).real() == doctest::Approx(-0.22314).epsilon(1e-4));
    CHECK(std::abs(det.M[0](0, 1)) < 1e-14);
    CHECK(det.b[0] == doctest::Approx(0.5));
    CHECK_THROWS_AS(build_deterministic(cfg, axis_spec(), 0.0), BadRate);
}

TEST_CASE("p_out = 1 removes the covariance term") {
    const SystemConfig cfg = unit_config(2, 1, 1.0);
    const S1Deterministic det = build_deterministic(cfg, axis_spec(), 1.0);
    CHECK(det.M[0](0, 0).real() == doctest::Approx(0.5));
    CHECK(std::abs(det.M[0](1, 1)) < 1e-14);
}

TEST_CASE("feasibility_check on the frozen instances") {
    SUBCASE("sufficient holds at p=0.8") {
        const S1Deterministic det =
            build_deterministic(unit_config(2, 1, 0.8), axis_spec(), 1.0);
        CHECK(feasibility_check(det) == FeasibilityVerdict::SufficientHolds);
    }
    SUBCASE("necessary fails at p=0.05") {
        const S1Deterministic det =
            build_deterministic(unit_config(2, 1, 0.05), axis_spec(), 1.0);
        // lmax(M) = 0.5 + ln(0.05) = -2.4957 < 0
        CHECK(largest_eigenvalue(det.M[0]) == doctest::Approx(-2.4957).epsilon(1e-4));
        CHECK(feasibility_check(det) == FeasibilityVerdict::NecessaryFails);
    }
    SUBCASE("zero legitimate channel is hopeless") {
        ScenarioSpec spec = axis_spec();
        spec.h.setZero();
        const S1Deterministic det = build_deterministic(unit_config(2, 1, 0.5), spec, 1.0);
        CHECK(feasibility_check(det) == FeasibilityVerdict::NecessaryFails);
    }
}

TEST_CASE("closed form matches the frozen numbers") {
    const S1Deterministic det = build_deterministic(unit_config(2, 1, 0.8), axis_spec(), 1.0);
    const BeamformerSolution sol = closed_form_single_eve(det);
    REQUIRE(sol.status == DesignStatus::Optimal);
    CHECK(sol.power == doctest::Approx(1.8060).epsilon(1e-4));
    CHECK(std::abs(sol.w(0) - Complex(1.3439, 0)) < 1e-4);
    CHECK(std::abs(sol.w(1)) < 1e-12);
    CHECK(sol.margins[0] == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("closed form reports infeasibility") {
    const S1Deterministic det = build_deterministic(unit_config(2, 1, 0.05), axis_spec(), 1.0);
    CHECK(closed_form_single_eve(det).status == DesignStatus::Infeasible);
}

TEST_CASE("power vanishes as the rate target goes to zero") {
    const SystemConfig cfg = unit_config(2, 1, 0.8);
    double prev = 1e9;
    for (double r : {1.0, 0.1, 0.01, 0.001}) {
        const double p = closed_form_single_eve(build_deterministic(cfg, axis_spec(), r)).power;
        CHECK(p < prev);
        prev = p;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("SDR agrees with the closed form on random single-Eve instances") {
    RngStream rng(211, 0);
    int done = 0;
    for (int trial = 0; trial < 200 && done < 25; ++trial) {
        RngStream tr = rng.substream(trial);
        const RandomInstance inst = random_instance(2 + 2 * (trial % 4), 1, tr);
        const S1Deterministic det = build_deterministic(inst.cfg, inst.spec, inst.rate);
        const BeamformerSolution cf = closed_form_single_eve(det);
        if (cf.status != DesignStatus::Optimal) continue;
        const BeamformerSolution sdr = solve_sdr(det);
        REQUIRE(sdr.status == DesignStatus::Optimal);
        CHECK(std::abs(sdr.power - cf.power) / cf.power < 1e-5);
        CHECK(sdr.power >= sdr.power - 1e-7);  // extraction never beats the relaxation
        ++done;
    }
    CHECK(done == 25);
}

TEST_CASE("SDR optimum is rank one and necessity holds (multi-Eve)") {
    RngStream rng(223, 0);
    int done = 0;
    for (int trial = 0; trial < 300 && done < 20; ++trial) {
        RngStream tr = rng.substream(trial);
        const int k = 1 + trial % 4;
        const RandomInstance inst = random_instance(2 + 2 * (trial % 4), k, tr);
        const S1Deterministic det = build_deterministic(inst.cfg, inst.spec, inst.rate);
        BeamformerSolution sdr;
        sdr = solve_sdr(det);
        if (sdr.status != DesignStatus::Optimal) continue;
        CHECK(sdr.rank_ratio <= 1e-6);
        for (const auto& m : det.M) CHECK(largest_eigenvalue(m) > 0.0);
        for (double margin : sdr.margins) CHECK(margin > -1e-7);
        ++done;
    }
    CHECK(done == 20);
}

TEST_CASE("sufficient condition implies SDR feasibility") {
    RngStream rng(227, 0);
    int seen = 0;
    for (int trial = 0; trial < 400 && seen < 10; ++trial) {
        RngStream tr = rng.substream(trial);
        const RandomInstance inst = random_instance(3, 2, tr);
        const S1Deterministic det = build_deterministic(inst.cfg, inst.spec, inst.rate);
        if (feasibility_check(det) != FeasibilityVerdict::SufficientHolds) continue;
        CHECK(solve_sdr(det).status == DesignStatus::Optimal);
        ++seen;
    }
    CHECK(seen == 10);
}

TEST_CASE("grid oracle equivalence at Nt = 2") {
    RngStream rng(229, 0);
    int done = 0;
    for (int trial = 0; trial < 100 && done < 8; ++trial) {
        RngStream tr = rng.substream(trial);
        const RandomInstance inst = random_instance(2, 1 + trial % 2, tr);
        const S1Deterministic det = build_deterministic(inst.cfg, inst.spec, inst.rate);
        const BeamformerSolution sdr = solve_sdr(det);
        if (sdr.status != DesignStatus::Optimal) continue;
        const double grid = testing::grid_min_power([&](const CVector& u, double t) {
            std::vector<double> v;
            for (size_t i = 0; i < det.M.size(); ++i)
                v.push_back(det.b[i] - t * (u.adjoint() * det.M[i] * u)(0).real());
            return v;
        });
        CHECK(std::abs(sdr.power - grid) / sdr.power < 0.01);
        ++done;
    }
    CHECK(done == 8);
}

TEST_CASE("analytic outage against a direct Monte Carlo estimate") {
    RngStream rng(233, 0);
    for (int trial = 0; trial < 5; ++trial) {
        RngStream tr = rng.substream(trial);
        const int nt = 3;
        const CVector h = tr.cnormal_vector(nt);
        const CVector w = tr.cnormal_vector(nt);
        const CMatrix g_cov = random_psd(nt, tr);
        const double r = 0.5 + tr.uniform();
        const double p = analytic_outage(w, h, g_cov, 1.0, 1.0, r);

        const CMatrix root = psd_sqrt(g_cov);
        const int n = 100000;
        int outages = 0;
        RngStream mc = tr.substream(999);
        const double hw2 = std::norm(h.dot(w));
        for (int i = 0; i < n; ++i) {
            const CVector g = root * mc.cnormal_vector(nt);
            const double rate = std::log2(1.0 + hw2) - std::log2(1.0 + std::norm(g.dot(w)));
            if (std::max(rate, 0.0) < r) ++outages;
        }
        const double emp = static_cast<double>(outages) / n;
        const double ci = 3.0 * std::sqrt(std::max(p * (1.0 - p), 1e-4) / n);
        CHECK(std::abs(emp - p) <= ci + 1e-3);
    }
}

TEST_CASE("analytic outage at the designed beamformer meets the budget") {
    const SystemConfig cfg = unit_config(2, 1, 0.8);
    const S1Deterministic det = build_deterministic(cfg, axis_spec(), 1.0);
    const BeamformerSolution sol = closed_form_single_eve(det);
    const double p =
        analytic_outage(sol.w, det.h, det.G[0], cfg.noise_bob, cfg.noise_eves[0], 1.0);
    // constraint is tight at the optimum, so the outage sits at the budget
    CHECK(p == doctest::Approx(0.8).epsilon(1e-6));
}
