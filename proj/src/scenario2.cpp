// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/scenario2.hpp"

#include <cmath>
#include <limits>

#include "secbeam/errors.hpp"

namespace secbeam {

CMatrix S2Forms::a_mat(int k, const CMatrix& w) const {
    return e_root[k] * w * e_root[k];
}

CVector S2Forms::a_vec(int k, const CMatrix& w) const { return e_root[k] * w * g_est[k]; }

double S2Forms::c_of(int k, const CMatrix& w) const {
    const double hwh = (h.adjoint() * w * h)(0).real();
    const double gwg = (g_est[k].adjoint() * w * g_est[k])(0).real();
    const double two_r = std::exp2(rate);
    return (noise_eves[k] / (two_r * noise_bob)) * (noise_bob + hwh) - gwg - noise_eves[k];
}

double S2Forms::violation(const CMatrix& w) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < n_eves(); ++k)
        worst = std::max(worst,
                         upper_fragment_violation(a_mat(k, w), a_vec(k, w), c_of(k, w),
                                                  sigma[k]));
    return worst;
}

S2Forms build_forms2(const SystemConfig& cfg, const ScenarioSpec& spec, double r) {
    if (!(r > 0.0)) throw BadRate();
    if (spec.variant != ScenarioVariant::ImperfectEcsi)
        throw BadConfig("build_forms2 needs the imperfect-ECSI variant");
    const ScenarioSpec checked = validate(cfg, spec);
    S2Forms f;
    f.h = checked.h;
    f.g_est = checked.g_est;
    f.noise_eves = cfg.noise_eves;
    f.noise_bob = cfg.noise_bob;
    f.rate = r;
    for (int k = 0; k < cfg.n_eves(); ++k) {
        f.e_root.push_back(psd_sqrt(checked.eve_covs[k]));
        f.sigma.push_back(sigma_from_outage(cfg.outage_probs[k]));
    }
    return f;
}

namespace {

struct S2Model {
    ConeModel model;
    HermVar w;
};

S2Model build_model(const S2Forms& f) {
    const int nt = static_cast<int>(f.h.size());
    ConeModel model;
    const HermVar w = model.add_hermitian(nt);
    const double two_r = std::exp2(f.rate);
    for (int k = 0; k < f.n_eves(); ++k) {
        const CMatExpr a_expr = w.congruence(f.e_root[k]);
        const CVecExpr a_vec_expr = w.matvec(f.e_root[k], f.g_est[k]);
        LinExpr c_expr = LinExpr::constant_of(f.noise_eves[k] / two_r - f.noise_eves[k]);
        c_expr += (f.noise_eves[k] / (two_r * f.noise_bob)) * w.quad(f.h);
        c_expr -= w.quad(f.g_est[k]);
        add_upper_tail_fragment(model, {a_expr}, {a_vec_expr}, c_expr, f.sigma[k]);
    }
    model.add_psd(w.expr());
    model.minimize(w.trace());
    return {std::move(model), w};
}

}  // namespace

ConicProblem build_restriction_sdp(const SystemConfig& cfg, const ScenarioSpec& spec,
                                   double r) {
    return build_model(build_forms2(cfg, spec, r)).model.build();
}

std::pair<CMatrix, DesignStatus> solve_restriction_lifted(const SystemConfig& cfg,
                                                          const ScenarioSpec& spec, double r) {
    S2Model sm = build_model(build_forms2(cfg, spec, r));
    const ModelSolution ms = sm.model.run();
    if (ms.status != DesignStatus::Optimal) return {CMatrix(), ms.status};
    return {psd_project(symmetrize(sm.model.value(sm.w, ms.xi), 1e-6)), ms.status};
}

std::pair<CMatrix, CVector> projection_rank1(const CMatrix& w, const CVector& h) {
    const CMatrix root = psd_sqrt(psd_project(w));
    const CVector d = root * h;
    if (d.norm() <= 1e-12) throw DegenerateDirection();
    const CMatrix p = projection_onto(d);
    const CMatrix w_hat = symmetrize(root * p * root, 1e-8);
    const EigDecomp e = eig_hermitian(w_hat);
    const CVector vec = std::sqrt(std::max(e.values(0), 0.0)) * e.vectors.col(0);
    return {w_hat, vec};
}

BeamformerSolution solve_powermin(const SystemConfig& cfg, const ScenarioSpec& spec,
                                  double r) {
    const S2Forms f = build_forms2(cfg, spec, r);
    S2Model sm = build_model(f);
    const ModelSolution ms = sm.model.run();

    BeamformerSolution sol;
    sol.status = ms.status;
    if (ms.status != DesignStatus::Optimal) return sol;

    const CMatrix wv = symmetrize(sm.model.value(sm.w, ms.xi), 1e-6);
    const EigDecomp e = eig_hermitian(wv);
    const double l1 = std::max(e.values(0), 0.0);
    sol.rank_ratio = (l1 > 0.0 && e.values.size() > 1) ? std::max(e.values(1), 0.0) / l1 : 0.0;

    auto finish = [&](const CVector& w_final) {
        sol.w = w_final;
        sol.power = w_final.squaredNorm();
        const CMatrix ww = w_final * w_final.adjoint();
        sol.margins.clear();
        for (int k = 0; k < f.n_eves(); ++k)
            sol.margins.push_back(-upper_fragment_violation(f.a_mat(k, ww), f.a_vec(k, ww),
                                                            f.c_of(k, ww), f.sigma[k]));
    };

    CVector w1 = std::sqrt(l1) * e.vectors.col(0);
    if (sol.rank_ratio <= 1e-6) {
        finish(w1);
        if (f.violation(w1 * w1.adjoint()) <= 1e-7) return sol;
    } else {
        auto [w_hat, w_proj] = projection_rank1(wv, f.h);
        if (f.violation(w_proj * w_proj.adjoint()) <= 1e-7) {
            finish(w_proj);
            return sol;
        }
    }

    // Fallback: keep the leading eigenvector direction and search the power
    // scale. Geometric sweep to find a feasible point, then bisect down to
    // the smallest feasible power.
    const CVector u = e.vectors.col(0);
    const double cap = 10.0 * wv.trace().real();
    double lo = l1, hi = -1.0;
    for (double s = l1; s <= cap; s *= 1.25) {
        if (f.violation(s * u * u.adjoint()) <= 0.0) {
            hi = s;
            break;
        }
        lo = s;
    }
    if (hi < 0.0) throw RestrictionUnrecoverable();
    for (int it = 0; it < 40; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (f.violation(mid * u * u.adjoint()) <= 0.0)
            hi = mid;
        else
            lo = mid;
    }
    finish(std::sqrt(hi) * u);
    return sol;
}

}  // namespace secbeam
