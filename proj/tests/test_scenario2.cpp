// SPDX-License-Identifier: Apache-2.0

#include "secbeam/scenario2.hpp"

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
    cfg.power_budget = 1000.0;
    cfg.outage_probs.assign(k, p_out);
    return cfg;
}

ScenarioSpec random_s2(int nt, int k, double eps, RngStream& rng) {
    return random_spec(ScenarioVariant::ImperfectEcsi, nt, k, 0.0, eps, rng);
}

CMatrix random_psd(int n, RngStream& rng, double scale = 1.0) {
    CMatrix a(n, n);
    for (int i = 0; i < n * n; ++i) a.data()[i] = rng.cnormal();
    return CMatrix(scale * (a * a.adjoint()) / n);
}

// nominal perfect-CSI power via the statistical-scenario machinery with the
// estimate treated as exact
double nominal_power(const SystemConfig& cfg, const ScenarioSpec& spec, double r) {
    const double two_r = std::exp2(r);
    S1Deterministic det;
    det.rate = r;
    det.h = spec.h;
    det.noise_bob = cfg.noise_bob;
    for (int k = 0; k < cfg.n_eves(); ++k) {
        const CMatrix m = (cfg.noise_eves[k] / (cfg.noise_bob * two_r)) * spec.h *
                              spec.h.adjoint() -
                          spec.g_est[k] * spec.g_est[k].adjoint();
        det.M.push_back(symmetrize(m, 1e-8));
        det.b.push_back(cfg.noise_eves[k] * (1.0 - 1.0 / two_r));
        det.G.push_back(CMatrix::Zero(cfg.n_tx, cfg.n_tx));
        det.noise_eves.push_back(cfg.noise_eves[k]);
        det.outage_probs.push_back(1.0);
    }
    const BeamformerSolution sol = solve_sdr(det);
    REQUIRE(sol.status == DesignStatus::Optimal);
    return sol.power;
}

}  // namespace

TEST_CASE("build_restriction_sdp has the documented cone structure") {
    RngStream rng(301, 0);
    const int k = 3;
    const SystemConfig cfg = unit_config(6, k, 0.05);
    const ScenarioSpec spec = random_s2(6, k, 0.2, rng);
    const ConicProblem p = build_restriction_sdp(cfg, spec, 3.0);
    p.validate();
    int n_soc = 0, n_psd = 0, n_nonneg_entries = 0;
    for (const auto& c : p.cones) {
        if (c.kind == Cone::Kind::SecondOrder) ++n_soc;
        if (c.kind == Cone::Kind::Psd) ++n_psd;
        if (c.kind == Cone::Kind::NonNeg) n_nonneg_entries += c.dim;
    }
    CHECK(n_soc == k);
    CHECK(n_psd == k + 1);             // k slack rows + the lifted variable
    CHECK(n_nonneg_entries == 2 * k);  // residual + slack sign per Eve
    CHECK(p.A.rows() == 36 + 2 * k);   // Nt^2 matrix params + (mu, v) per Eve
}

TEST_CASE("zero uncertainty collapses to the nominal constraint") {
    RngStream rng(307, 0);
    for (int trial = 0; trial < 5; ++trial) {
        RngStream tr = rng.substream(trial);
        const SystemConfig cfg = unit_config(3, 1, 0.1);
        ScenarioSpec spec = random_s2(3, 1, 0.0, tr);
        const double r = 1.0;
        BeamformerSolution sol;
        try {
            sol = solve_powermin(cfg, spec, r);
        } catch (const Error&) {
            continue;
        }
        if (sol.status != DesignStatus::Optimal) continue;
        CHECK(std::abs(sol.power - nominal_power(cfg, spec, r)) /
                  std::max(sol.power, 1e-12) < 0.02);
    }
}

TEST_CASE("vanishing uncertainty approaches the nominal power") {
    RngStream rng(311, 0);
    int done = 0;
    for (int trial = 0; trial < 40 && done < 5; ++trial) {
        RngStream tr = rng.substream(trial);
        const SystemConfig cfg = unit_config(4, 2, 0.1);
        const ScenarioSpec spec = random_s2(4, 2, 1e-6, tr);
        BeamformerSolution sol;
        try {
            sol = solve_powermin(cfg, spec, 1.0);
        } catch (const Error&) {
            continue;
        }
        if (sol.status != DesignStatus::Optimal) continue;
        const double nom = nominal_power(cfg, spec, 1.0);
        CHECK(std::abs(sol.power - nom) / nom < 0.05);
        ++done;
    }
    CHECK(done == 5);
}

TEST_CASE("solutions satisfy the restriction with nonnegative margins") {
    RngStream rng(313, 0);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 10; ++trial) {
        RngStream tr = rng.substream(trial);
        const int nt = 2 + trial % 3;
        const int k = 1 + trial % 2;
        const SystemConfig cfg = unit_config(nt, k, 0.05 + 0.1 * tr.uniform());
        const ScenarioSpec spec = random_s2(nt, k, 0.05 + 0.15 * tr.uniform(), tr);
        BeamformerSolution sol;
        try {
            sol = solve_powermin(cfg, spec, 0.5 + tr.uniform());
        } catch (const Error&) {
            continue;
        }
        if (sol.status != DesignStatus::Optimal) continue;
        for (double m : sol.margins) CHECK(m >= -1e-8);
        CHECK(sol.power == doctest::Approx(sol.w.squaredNorm()).epsilon(1e-10));
        ++done;
    }
    CHECK(done == 10);
}

TEST_CASE("grid oracle equivalence at Nt = 2") {
    RngStream rng(317, 0);
    int done = 0;
    for (int trial = 0; trial < 60 && done < 6; ++trial) {
        RngStream tr = rng.substream(trial);
        const SystemConfig cfg = unit_config(2, 1, 0.1);
        const ScenarioSpec spec = random_s2(2, 1, 0.1, tr);
        const double r = 0.5 + tr.uniform();
        BeamformerSolution sol;
        try {
            sol = solve_powermin(cfg, spec, r);
        } catch (const Error&) {
            continue;
        }
        if (sol.status != DesignStatus::Optimal) continue;
        const S2Forms f = build_forms2(cfg, spec, r);
        const double grid = testing::grid_min_power([&](const CVector& u, double t) {
            const CMatrix w = t * u * u.adjoint();
            std::vector<double> v;
            for (int k = 0; k < f.n_eves(); ++k)
                v.push_back(upper_fragment_violation(f.a_mat(k, w), f.a_vec(k, w),
                                                     f.c_of(k, w), f.sigma[k]));
            return v;
        });
        CHECK(std::abs(sol.power - grid) / grid < 0.01);
        ++done;
    }
    CHECK(done == 6);
}

TEST_CASE("projection_rank1 hand cases") {
    SUBCASE("identity projects onto the channel direction") {
        CVector h = CVector::Zero(2);
        h(0) = 1.0;
        const auto [w_hat, w] = projection_rank1(CMatrix::Identity(2, 2), h);
        CHECK(std::abs(w_hat(0, 0) - Complex(1, 0)) < 1e-12);
        CHECK(std::abs(w_hat(1, 1)) < 1e-12);
        CHECK(w_hat.trace().real() == doctest::Approx(1.0));
    }
    SUBCASE("rank-1 input is a fixed point") {
        RngStream rng(331, 0);
        const CVector v = rng.cnormal_vector(3);
        const CVector h = rng.cnormal_vector(3);
        const CMatrix w0 = v * v.adjoint();
        const auto [w_hat, w] = projection_rank1(w0, h);
        CHECK((w_hat - w0).cwiseAbs().maxCoeff() < 1e-9);
    }
    SUBCASE("degenerate direction throws") {
        CMatrix w0 = CMatrix::Zero(2, 2);
        w0(1, 1) = 1.0;
        CVector h = CVector::Zero(2);
        h(0) = 1.0;  // W^{1/2} h = 0
        CHECK_THROWS_AS(projection_rank1(w0, h), DegenerateDirection);
    }
}

TEST_CASE("projection_rank1 guarantees on random inputs") {
    RngStream rng(337, 0);
    for (int trial = 0; trial < 20; ++trial) {
        RngStream tr = rng.substream(trial);
        const int nt = 2 + trial % 4;
        const CMatrix w0 = random_psd(nt, tr);
        const CVector h = tr.cnormal_vector(nt);
        const auto [w_hat, w] = projection_rank1(w0, h);
        CHECK(w_hat.trace().real() <= w0.trace().real() + 1e-9);
        CHECK(std::abs((h.adjoint() * w_hat * h)(0).real() -
                       (h.adjoint() * w0 * h)(0).real()) < 1e-9);
        for (int i = 0; i < 10; ++i) {
            const CVector g = tr.cnormal_vector(nt);
            CHECK((g.adjoint() * w_hat * g)(0).real() <=
                  (g.adjoint() * w0 * g)(0).real() + 1e-9);
        }
        // returned vector reproduces the projected matrix
        CHECK((w * w.adjoint() - w_hat).cwiseAbs().maxCoeff() < 1e-8);
    }
}

TEST_CASE("objective is monotone in the rate target") {
    RngStream rng(347, 0);
    const SystemConfig cfg = unit_config(3, 2, 0.1);
    const ScenarioSpec spec = random_s2(3, 2, 0.05, rng);
    double prev = 0.0;
    for (double r : {0.5, 1.0, 1.5, 2.0}) {
        BeamformerSolution sol;
        try {
            sol = solve_powermin(cfg, spec, r);
        } catch (const Error&) {
            break;
        }
        if (sol.status != DesignStatus::Optimal) break;
        CHECK(sol.power >= prev - 1e-7);
        prev = sol.power;
    }
    CHECK(prev > 0.0);
}

TEST_CASE("Monte Carlo outage of the design is conservative") {
    RngStream rng(349, 0);
    int done = 0;
    for (int trial = 0; trial < 30 && done < 3; ++trial) {
        RngStream tr = rng.substream(trial);
        const double p_out = 0.1;
        const SystemConfig cfg = unit_config(3, 1, p_out);
        const ScenarioSpec spec = random_s2(3, 1, 0.1, tr);
        const double r = 1.0;
        BeamformerSolution sol;
        try {
            sol = solve_powermin(cfg, spec, r);
        } catch (const Error&) {
            continue;
        }
        if (sol.status != DesignStatus::Optimal) continue;

        const CMatrix root = psd_sqrt(spec.eve_covs[0]);
        const double hw2 = std::norm(spec.h.dot(sol.w));
        const double bob = std::log2(1.0 + hw2 / cfg.noise_bob);
        const int n = 20000;
        int outages = 0;
        RngStream mc = tr.substream(777);
        for (int i = 0; i < n; ++i) {
            const CVector g = spec.g_est[0] + root * mc.cnormal_vector(3);
            const double eve = std::log2(1.0 + std::norm(g.dot(sol.w)) / cfg.noise_eves[0]);
            if (std::max(bob - eve, 0.0) < r) ++outages;
        }
        const double emp = static_cast<double>(outages) / n;
        CHECK(emp <= p_out + 3.0 * std::sqrt(p_out * (1.0 - p_out) / n));
        ++done;
    }
    CHECK(done == 3);
}
