// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/scenario1.hpp"

#include <cmath>

#include "secbeam/errors.hpp"

namespace secbeam {

const char* to_string(FeasibilityVerdict v) {
    switch (v) {
        case FeasibilityVerdict::SufficientHolds: return "SufficientHolds";
        case FeasibilityVerdict::NecessaryFails: return "NecessaryFails";
        case FeasibilityVerdict::Indeterminate: return "Indeterminate";
    }
    return "?";
}

S1Deterministic build_deterministic(const SystemConfig& cfg, const ScenarioSpec& spec,
                                    double r) {
    if (!(r > 0.0)) throw BadRate();
    if (spec.variant != ScenarioVariant::StatisticalEcsi)
        throw BadConfig("build_deterministic needs the statistical-ECSI variant");
    const ScenarioSpec checked = validate(cfg, spec);
    const int k = cfg.n_eves();
    const double two_r = std::exp2(r);

    S1Deterministic det;
    det.rate = r;
    det.h = checked.h;
    det.G = checked.eve_covs;
    det.noise_eves = cfg.noise_eves;
    det.outage_probs = cfg.outage_probs;
    det.noise_bob = cfg.noise_bob;
    const CMatrix hh = checked.h * checked.h.adjoint();
    for (int i = 0; i < k; ++i) {
        const double de2 = cfg.noise_eves[i];
        CMatrix m = checked.eve_covs[i] * std::log(cfg.outage_probs[i]) +
                    (de2 / (cfg.noise_bob * two_r)) * hh;
        det.M.push_back(symmetrize(m));
        det.b.push_back(de2 * (1.0 - 1.0 / two_r));
    }
    return det;
}

FeasibilityVerdict feasibility_check(const S1Deterministic& det) {
    const double h2 = det.h.squaredNorm();
    const double two_r = std::exp2(det.rate);
    bool sufficient = true;
    for (size_t i = 0; i < det.M.size(); ++i) {
        if (largest_eigenvalue(det.M[i]) <= 0.0) return FeasibilityVerdict::NecessaryFails;
        const double lhs = (det.noise_eves[i] / (det.noise_bob * two_r)) * h2 * h2;
        const double rhs =
            -largest_eigenvalue(det.G[i]) * h2 * std::log(det.outage_probs[i]) - det.b[i];
        if (lhs < rhs) sufficient = false;
    }
    return sufficient ? FeasibilityVerdict::SufficientHolds : FeasibilityVerdict::Indeterminate;
}

BeamformerSolution closed_form_single_eve(const S1Deterministic& det) {
    if (det.M.size() != 1) throw BadConfig("closed form applies to a single Eve only");
    BeamformerSolution sol;
    const EigDecomp e = eig_hermitian(det.M[0]);
    const double rho = e.values(0);
    if (rho <= 0.0) {
        sol.status = DesignStatus::Infeasible;
        return sol;
    }
    sol.w = std::sqrt(det.b[0] / rho) * e.vectors.col(0);
    sol.power = sol.w.squaredNorm();
    sol.status = DesignStatus::Optimal;
    sol.margins = {(sol.w.adjoint() * det.M[0] * sol.w)(0).real() - det.b[0]};
    return sol;
}

BeamformerSolution solve_sdr(const S1Deterministic& det) {
    const int k = static_cast<int>(det.M.size());
    ConeModel model;
    const HermVar w = model.add_hermitian(static_cast<int>(det.h.size()));
    for (int i = 0; i < k; ++i)
        model.add_nonneg(w.inner(det.M[i]) - LinExpr::constant_of(det.b[i]));
    model.add_psd(w.expr());
    model.minimize(w.trace());
    const ModelSolution ms = model.run();

    BeamformerSolution sol;
    sol.status = ms.status;
    if (ms.status != DesignStatus::Optimal) return sol;

    const CMatrix wv = symmetrize(model.value(w, ms.xi), 1e-6);
    const EigDecomp e = eig_hermitian(wv);
    sol.rank_ratio = (e.values(0) > 0.0 && e.values.size() > 1)
                         ? std::max(e.values(1), 0.0) / e.values(0)
                         : 0.0;
    sol.w = std::sqrt(std::max(e.values(0), 0.0)) * e.vectors.col(0);

    auto margins_at = [&](const CVector& vec) {
        std::vector<double> m(k);
        for (int i = 0; i < k; ++i)
            m[i] = (vec.adjoint() * det.M[i] * vec)(0).real() - det.b[i];
        return m;
    };
    sol.margins = margins_at(sol.w);

    double worst = 0.0;
    for (double m : sol.margins) worst = std::min(worst, m);
    if (sol.rank_ratio > 1e-6 && worst < -1e-6) {
        // repair: rescale the rank-1 projection so the most-violated
        // constraint becomes tight again
        double scale = 1.0;
        bool fixable = true;
        for (int i = 0; i < k; ++i) {
            const double q = (sol.w.adjoint() * det.M[i] * sol.w)(0).real();
            if (q <= 0.0 && det.b[i] > 0.0) {
                fixable = false;
                break;
            }
            if (q > 0.0) scale = std::max(scale, det.b[i] / q);
        }
        if (!fixable) throw RankViolation();
        sol.w *= std::sqrt(scale);
        sol.margins = margins_at(sol.w);
        worst = 0.0;
        for (double m : sol.margins) worst = std::min(worst, m);
        if (worst < -1e-6) throw RankViolation();
    }
    sol.power = sol.w.squaredNorm();
    return sol;
}

double analytic_outage(const CVector& w, const CVector& h, const CMatrix& g_cov,
                       double noise_bob, double noise_eve, double r) {
    const double mean = (w.adjoint() * g_cov * w)(0).real();
    const double hw2 = std::norm(h.dot(w));
    const double ratio = (noise_bob + hw2) / (noise_bob * std::exp2(r));
    if (mean <= 0.0) return ratio >= 1.0 ? 0.0 : 1.0;  // no leakage randomness
    const double x = (noise_eve / mean) * (1.0 - ratio);
    return std::min(std::exp(x), 1.0);
}

}  // namespace secbeam
