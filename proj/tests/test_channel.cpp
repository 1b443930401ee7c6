// SPDX-License-Identifier: Apache-2.0

#include "secbeam/channel.hpp"

#include "doctest.h"
#include "secbeam/errors.hpp"

using namespace secbeam;

namespace {

SystemConfig base_config(int nt, int k) {
    SystemConfig cfg;
    cfg.n_tx = nt;
    cfg.noise_bob = 1.0;
    cfg.noise_eves.assign(k, 1.0);
    cfg.power_budget = 10.0;
    cfg.outage_probs.assign(k, 0.1);
    return cfg;
}

}  // namespace

TEST_CASE("validate catches dimension and probability errors") {
    SystemConfig cfg = base_config(2, 1);
    ScenarioSpec spec;
    spec.variant = ScenarioVariant::StatisticalEcsi;
    spec.h = CVector::Ones(2);
    spec.eve_covs = {CMatrix::Identity(2, 2)};
    CHECK_NOTHROW(validate(cfg, spec));

    SUBCASE("h length") {
        spec.h = CVector::Ones(3);
        CHECK_THROWS_AS(validate(cfg, spec), DimensionMismatch);
    }
    SUBCASE("cov count") {
        spec.eve_covs.push_back(CMatrix::Identity(2, 2));
        CHECK_THROWS_AS(validate(cfg, spec), DimensionMismatch);
    }
    SUBCASE("probabilities") {
        cfg.outage_probs = {0.0};
        CHECK_THROWS_AS(validate(cfg, spec), BadProbability);
        cfg.outage_probs = {1.5};
        CHECK_THROWS_AS(validate(cfg, spec), BadProbability);
    }
    SUBCASE("indefinite covariance") {
        spec.eve_covs[0](0, 0) = -1.0;
        CHECK_THROWS_AS(validate(cfg, spec), NotPsd);
    }
    SUBCASE("estimates rejected in the statistical variant") {
        spec.g_est = {CVector::Ones(2)};
        CHECK_THROWS_AS(validate(cfg, spec), BadConfig);
    }
}

TEST_CASE("validate requires estimates for the imperfect variants") {
    SystemConfig cfg = base_config(2, 2);
    ScenarioSpec spec;
    spec.variant = ScenarioVariant::ImperfectEcsi;
    spec.h = CVector::Ones(2);
    spec.eve_covs = {0.01 * CMatrix::Identity(2, 2), 0.01 * CMatrix::Identity(2, 2)};
    CHECK_THROWS_AS(validate(cfg, spec), DimensionMismatch);
    spec.g_est = {CVector::Ones(2), CVector::Ones(2)};
    CHECK_NOTHROW(validate(cfg, spec));

    spec.variant = ScenarioVariant::ImperfectBoth;
    CHECK_THROWS_AS(validate(cfg, spec), DimensionMismatch);  // missing bob_cov
    spec.bob_cov = 0.01 * CMatrix::Identity(2, 2);
    CHECK_NOTHROW(validate(cfg, spec));
}

TEST_CASE("sample_cn hits the requested mean and covariance") {
    RngStream rng(17, 0);
    CVector mean(2);
    mean << Complex(1, -1), Complex(0, 2);
    CMatrix cov(2, 2);
    cov << 2.0, Complex(0.5, 0.5), Complex(0.5, -0.5), 1.0;
    const int n = 50000;
    CVector msum = CVector::Zero(2);
    CMatrix csum = CMatrix::Zero(2, 2);
    for (int i = 0; i < n; ++i) {
        const CVector x = sample_cn(mean, cov, rng) - mean;
        msum += x;
        csum += x * x.adjoint();
    }
    CHECK((msum / n).cwiseAbs().maxCoeff() < 0.05);
    CHECK(((csum / n) - cov).cwiseAbs().maxCoeff() < 0.05);
}

TEST_CASE("realize respects the scenario variant") {
    RngStream rng(23, 0);
    ScenarioSpec spec;
    spec.variant = ScenarioVariant::StatisticalEcsi;
    spec.h = CVector::Ones(3);
    spec.eve_covs = {CMatrix::Identity(3, 3)};
    ChannelRealization cr = realize(spec, rng);
    CHECK((cr.h - spec.h).cwiseAbs().maxCoeff() == 0.0);
    CHECK(cr.g.size() == 1);

    spec.variant = ScenarioVariant::ImperfectBoth;
    spec.g_est = {2.0 * CVector::Ones(3)};
    spec.eve_covs = {CMatrix::Zero(3, 3)};
    spec.bob_cov = CMatrix::Zero(3, 3);
    cr = realize(spec, rng);
    CHECK((cr.h - spec.h).cwiseAbs().maxCoeff() == 0.0);
    CHECK((cr.g[0] - spec.g_est[0]).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("SpecSampler reproduces realize draw for draw") {
    RngStream rng(29, 0);
    ScenarioSpec spec = random_spec(ScenarioVariant::ImperfectBoth, 3, 2, 0.01, 0.05, rng);
    SpecSampler sampler(spec);
    RngStream ra(31, 5), rb(31, 5);
    for (int i = 0; i < 20; ++i) {
        const ChannelRealization a = realize(spec, ra);
        const ChannelRealization b = sampler.draw(rb);
        CHECK((a.h - b.h).cwiseAbs().maxCoeff() < 1e-15);
        for (size_t k = 0; k < a.g.size(); ++k)
            CHECK((a.g[k] - b.g[k]).cwiseAbs().maxCoeff() < 1e-15);
    }
}

TEST_CASE("random_spec produces the documented shapes") {
    RngStream rng(37, 0);
    const ScenarioSpec s1 = random_spec(ScenarioVariant::StatisticalEcsi, 4, 3, 0.0, 0.1, rng);
    CHECK(s1.h.size() == 4);
    CHECK(s1.g_est.empty());
    CHECK(s1.eve_covs.size() == 3);
    CHECK(std::abs(s1.eve_covs[0](0, 0) - Complex(0.1, 0)) < 1e-15);

    const ScenarioSpec s3 = random_spec(ScenarioVariant::ImperfectBoth, 4, 2, 0.02, 0.1, rng);
    CHECK(s3.g_est.size() == 2);
    CHECK(std::abs(s3.bob_cov(1, 1) - Complex(0.02, 0)) < 1e-15);
}
