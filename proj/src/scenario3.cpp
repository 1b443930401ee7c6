// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/scenario3.hpp"

#include <cmath>
#include <limits>

#include "secbeam/errors.hpp"

namespace secbeam {

CMatrix S3Forms::a_mat_full(int k, const CMatrix& w) const {
    const int nt = static_cast<int>(h_est.size());
    CMatrix full = CMatrix::Zero(2 * nt, 2 * nt);
    full.topLeftCorner(nt, nt) = (1.0 / noise_bob) * eb_root * w * eb_root;
    full.bottomRightCorner(nt, nt) =
        -(std::exp2(rate) / noise_eves[k]) * ee_root[k] * w * ee_root[k];
    return full;
}

CVector S3Forms::a_vec_full(int k, const CMatrix& w) const {
    const int nt = static_cast<int>(h_est.size());
    CVector full(2 * nt);
    full.head(nt) = (1.0 / noise_bob) * eb_root * w * h_est;
    full.tail(nt) = -(std::exp2(rate) / noise_eves[k]) * ee_root[k] * w * g_est[k];
    return full;
}

double S3Forms::c_of(int k, const CMatrix& w) const {
    const double two_r = std::exp2(rate);
    const double hwh = (h_est.adjoint() * w * h_est)(0).real();
    const double gwg = (g_est[k].adjoint() * w * g_est[k])(0).real();
    return two_r - 1.0 - hwh / noise_bob + (two_r / noise_eves[k]) * gwg;
}

double S3Forms::violation(const CMatrix& w) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_eves(); ++k)
        worst = std::max(worst, lower_fragment_violation(a_mat_full(k, w), a_vec_full(k, w),
                                                         c_of(k, w), sigma[k]));
    return worst;
}

S3Forms build_forms3(const SystemConfig& cfg, const ScenarioSpec& spec, double r) {
    if (!(r > 0.0)) throw BadRate();
    if (spec.variant != ScenarioVariant::ImperfectBoth)
        throw BadConfig("build_forms3 needs the imperfect-LCSI-and-ECSI variant");
    const ScenarioSpec checked = validate(cfg, spec);
    S3Forms f;
    f.h_est = checked.h;
    f.g_est = checked.g_est;
    f.eb_root = psd_sqrt(checked.bob_cov);
    f.noise_eves = cfg.noise_eves;
    f.noise_bob = cfg.noise_bob;
    f.rate = r;
    for (int k = 0; k < cfg.n_eves(); ++k) {
        f.ee_root.push_back(psd_sqrt(checked.eve_covs[k]));
        f.sigma.push_back(sigma_from_outage(cfg.outage_probs[k]));
    }
    return f;
}

namespace {

struct S3Model {
    ConeModel model;
    HermVar w;
};

S3Model build_model(const S3Forms& f) {
    const int nt = static_cast<int>(f.h_est.size());
    ConeModel model;
    const HermVar w = model.add_hermitian(nt);
    const double two_r = std::exp2(f.rate);
    const bool bob_block = f.eb_root.cwiseAbs().maxCoeff() > 0.0;
    for (int k = 0; k < f.n_eves(); ++k) {
        std::vector<CMatExpr> a_blocks;
        std::vector<CVecExpr> a_vecs;
        if (bob_block) {
            CMatExpr b1 = w.congruence(f.eb_root);
            b1 *= 1.0 / f.noise_bob;
            a_blocks.push_back(b1);
            CVecExpr v1 = w.matvec(f.eb_root, f.h_est);
            v1 *= 1.0 / f.noise_bob;
            a_vecs.push_back(v1);
        }
        if (f.ee_root[k].cwiseAbs().maxCoeff() > 0.0) {
            CMatExpr b2 = w.congruence(f.ee_root[k]);
            b2 *= -(two_r / f.noise_eves[k]);
            a_blocks.push_back(b2);
            CVecExpr v2 = w.matvec(f.ee_root[k], f.g_est[k]);
            v2 *= -(two_r / f.noise_eves[k]);
            a_vecs.push_back(v2);
        }
        LinExpr c_expr = LinExpr::constant_of(two_r - 1.0);
        c_expr -= (1.0 / f.noise_bob) * w.quad(f.h_est);
        c_expr += (two_r / f.noise_eves[k]) * w.quad(f.g_est[k]);
        add_lower_tail_fragment(model, a_blocks, a_vecs, c_expr, f.sigma[k]);
    }
    model.add_psd(w.expr());
    model.minimize(w.trace());
    return {std::move(model), w};
}

}  // namespace

ConicProblem build_restriction_sdp3(const SystemConfig& cfg, const ScenarioSpec& spec,
                                    double r) {
    return build_model(build_forms3(cfg, spec, r)).model.build();
}

CVector gaussian_randomization(const CMatrix& w, const S3Forms& forms, int l_candidates,
                               const RngStream& rng) {
    const int nt = static_cast<int>(w.rows());
    const CMatrix root = psd_sqrt(psd_project(symmetrize(w, 1e-6)));
    const EigDecomp e = eig_hermitian(symmetrize(w, 1e-6));

    double best_power = std::numeric_limits<double>::infinity();
    CVector best;

    auto try_candidate = [&](const CVector& cand) {
        const double base = cand.squaredNorm();
        if (base <= 1e-14) return;
        const CMatrix outer = cand * cand.adjoint();
        // coarse log sweep over t in [1, 100]
        constexpr int kSweep = 40;
        double t_feas = -1.0, t_below = 1.0;
        double prev = 1.0;
        for (int i = 0; i < kSweep; ++i) {
            const double t = std::pow(100.0, static_cast<double>(i) / (kSweep - 1));
            if (forms.violation(t * outer) <= 0.0) {
                t_feas = t;
                t_below = prev;
                break;
            }
            prev = t;
        }
        if (t_feas < 0.0) return;
        // local bisection toward the smallest feasible scale
        double lo = t_below, hi = t_feas;
        for (int i = 0; i < 30 && hi - lo > 1e-9 * hi; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (forms.violation(mid * outer) <= 0.0)
                hi = mid;
            else
                lo = mid;
        }
        const double power = hi * base;
        if (power < best_power) {
            best_power = power;
            best = std::sqrt(hi) * cand;
        }
    };

    try_candidate(std::sqrt(std::max(e.values(0), 0.0)) * e.vectors.col(0));
    for (int l = 1; l <= l_candidates; ++l) {
        RngStream sub = rng.substream(l);
        try_candidate(root * sub.cnormal_vector(nt));
    }
    if (!std::isfinite(best_power)) throw RandomizationFailed();
    return best;
}

BeamformerSolution solve_powermin3(const SystemConfig& cfg, const ScenarioSpec& spec, double r,
                                   const RngStream& rng, int l_candidates) {
    const S3Forms f = build_forms3(cfg, spec, r);
    S3Model sm = build_model(f);
    const ModelSolution ms = sm.model.run();

    BeamformerSolution sol;
    sol.status = ms.status;
    if (ms.status != DesignStatus::Optimal) return sol;

    const CMatrix wv = symmetrize(sm.model.value(sm.w, ms.xi), 1e-6);
    const EigDecomp e = eig_hermitian(wv);
    const double l1 = std::max(e.values(0), 0.0);
    sol.rank_ratio = (l1 > 0.0 && e.values.size() > 1) ? std::max(e.values(1), 0.0) / l1 : 0.0;

    CVector w_final = std::sqrt(l1) * e.vectors.col(0);
    if (sol.rank_ratio > 1e-6 || f.violation(w_final * w_final.adjoint()) > 1e-8)
        w_final = gaussian_randomization(wv, f, l_candidates, rng);

    sol.w = w_final;
    sol.power = w_final.squaredNorm();
    const CMatrix ww = w_final * w_final.adjoint();
    for (int k = 0; k < f.n_eves(); ++k)
        sol.margins.push_back(-lower_fragment_violation(f.a_mat_full(k, ww),
                                                        f.a_vec_full(k, ww), f.c_of(k, ww),
                                                        f.sigma[k]));
    return sol;
}

}  // namespace secbeam
