// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/channel.hpp"

#include <cmath>

namespace secbeam {

namespace {

CMatrix checked_cov(const CMatrix& cov, int n_tx) {
    if (cov.rows() != n_tx || cov.cols() != n_tx)
        throw DimensionMismatch("covariance dimension does not match n_tx");
    CMatrix sym = symmetrize(cov);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(sym, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -kPsdEigTol) throw NotPsd();
    return sym;
}

}  // namespace

ScenarioSpec validate(const SystemConfig& cfg, ScenarioSpec spec) {
    const int nt = cfg.n_tx;
    const int k = cfg.n_eves();
    if (nt < 1 || k < 1) throw BadConfig("need n_tx >= 1 and at least one Eve");
    if (static_cast<int>(cfg.outage_probs.size()) != k)
        throw DimensionMismatch("outage_probs length must equal the Eve count");
    if (!(cfg.noise_bob > 0.0) || !(cfg.power_budget > 0.0))
        throw BadConfig("noise variances and power budget must be positive");
    for (double d : cfg.noise_eves)
        if (!(d > 0.0)) throw BadConfig("noise variances must be positive");
    for (double p : cfg.outage_probs)
        if (!(p > 0.0) || p > 1.0) throw BadProbability();

    if (spec.h.size() != nt) throw DimensionMismatch("h dimension does not match n_tx");
    if (static_cast<int>(spec.eve_covs.size()) != k)
        throw DimensionMismatch("eve_covs length must equal the Eve count");
    for (auto& cov : spec.eve_covs) cov = checked_cov(cov, nt);

    switch (spec.variant) {
        case ScenarioVariant::StatisticalEcsi:
            if (!spec.g_est.empty())
                throw BadConfig("g_estimates are not part of the statistical-ECSI variant");
            spec.bob_cov.resize(0, 0);
            break;
        case ScenarioVariant::ImperfectEcsi:
            if (static_cast<int>(spec.g_est.size()) != k)
                throw DimensionMismatch("g_estimates length must equal the Eve count");
            for (const auto& g : spec.g_est)
                if (g.size() != nt) throw DimensionMismatch("g_estimate dimension mismatch");
            spec.bob_cov.resize(0, 0);
            break;
        case ScenarioVariant::ImperfectBoth:
            if (static_cast<int>(spec.g_est.size()) != k)
                throw DimensionMismatch("g_estimates length must equal the Eve count");
            for (const auto& g : spec.g_est)
                if (g.size() != nt) throw DimensionMismatch("g_estimate dimension mismatch");
            spec.bob_cov = checked_cov(spec.bob_cov, nt);
            break;
    }
    return spec;
}

CVector sample_cn(const CVector& mean, const CMatrix& cov, RngStream& rng) {
    const CMatrix root = psd_sqrt(cov);
    return mean + root * rng.cnormal_vector(static_cast<int>(mean.size()));
}

ChannelRealization realize(const ScenarioSpec& spec, RngStream& rng) {
    ChannelRealization out;
    const int k = static_cast<int>(spec.eve_covs.size());
    out.g.resize(k);
    const int nt = static_cast<int>(spec.h.size());
    const CVector zero = CVector::Zero(nt);
    switch (spec.variant) {
        case ScenarioVariant::StatisticalEcsi:
            out.h = spec.h;
            for (int i = 0; i < k; ++i) out.g[i] = sample_cn(zero, spec.eve_covs[i], rng);
            break;
        case ScenarioVariant::ImperfectEcsi:
            out.h = spec.h;
            for (int i = 0; i < k; ++i) out.g[i] = sample_cn(spec.g_est[i], spec.eve_covs[i], rng);
            break;
        case ScenarioVariant::ImperfectBoth:
            out.h = sample_cn(spec.h, spec.bob_cov, rng);
            for (int i = 0; i < k; ++i) out.g[i] = sample_cn(spec.g_est[i], spec.eve_covs[i], rng);
            break;
    }
    return out;
}

SpecSampler::SpecSampler(const ScenarioSpec& spec) : spec_(spec) {
    eve_roots_.reserve(spec_.eve_covs.size());
    for (const auto& cov : spec_.eve_covs) eve_roots_.push_back(psd_sqrt(cov));
    if (spec_.variant == ScenarioVariant::ImperfectBoth) bob_root_ = psd_sqrt(spec_.bob_cov);
}

ChannelRealization SpecSampler::draw(RngStream& rng) const {
    ChannelRealization out;
    const int nt = static_cast<int>(spec_.h.size());
    const int k = static_cast<int>(spec_.eve_covs.size());
    out.g.resize(k);
    if (spec_.variant == ScenarioVariant::ImperfectBoth)
        out.h = spec_.h + bob_root_ * rng.cnormal_vector(nt);
    else
        out.h = spec_.h;
    for (int i = 0; i < k; ++i) {
        CVector noise = eve_roots_[i] * rng.cnormal_vector(nt);
        out.g[i] = (spec_.variant == ScenarioVariant::StatisticalEcsi)
                       ? std::move(noise)
                       : CVector(spec_.g_est[i] + noise);
    }
    return out;
}

ScenarioSpec random_spec(ScenarioVariant variant, int n_tx, int n_eves, double eps_b,
                         double eps_e, RngStream& rng) {
    ScenarioSpec spec;
    spec.variant = variant;
    spec.h = rng.cnormal_vector(n_tx);
    spec.eve_covs.assign(n_eves, eps_e * CMatrix::Identity(n_tx, n_tx));
    if (variant != ScenarioVariant::StatisticalEcsi) {
        spec.g_est.resize(n_eves);
        for (int i = 0; i < n_eves; ++i) spec.g_est[i] = rng.cnormal_vector(n_tx);
    }
    if (variant == ScenarioVariant::ImperfectBoth)
        spec.bob_cov = eps_b * CMatrix::Identity(n_tx, n_tx);
    return spec;
}

}  // namespace secbeam
