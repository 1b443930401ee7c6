// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <utility>
#include <vector>

#include "secbeam/bernstein.hpp"
#include "secbeam/scenario1.hpp"

namespace secbeam {

// Imperfect-ECSI scenario: g_k = g_est_k + error with CN(0, E_k) error. The
// per-Eve chance constraint is restricted through the upper tail bound with
//
//     A_k(W) = E_k^{1/2} W E_k^{1/2},   a_k(W) = E_k^{1/2} W g_est_k,
//     c_k(W) = (2^-R ne_k / nb)(nb + h^H W h) - g_est_k^H W g_est_k - ne_k,
//
// and the design problem is the SDP  min Tr(W) s.t. per-Eve fragment, W psd.

struct S2Forms {
    CVector h;
    std::vector<CVector> g_est;
    std::vector<CMatrix> e_root;  // E_k^{1/2}
    std::vector<double> sigma;
    std::vector<double> noise_eves;
    double noise_bob = 1.0;
    double rate = 0.0;

    int n_eves() const { return static_cast<int>(g_est.size()); }
    CMatrix a_mat(int k, const CMatrix& w) const;
    CVector a_vec(int k, const CMatrix& w) const;
    double c_of(int k, const CMatrix& w) const;
    /// max_k of the upper-fragment violation at a fixed W; <= 0 means the
    /// restriction holds for every Eve
    double violation(const CMatrix& w) const;
};

S2Forms build_forms2(const SystemConfig& cfg, const ScenarioSpec& spec, double r);

/// The assembled standard-form SDP (for audits and debug dumps).
ConicProblem build_restriction_sdp(const SystemConfig& cfg, const ScenarioSpec& spec, double r);

/// The lifted SDP optimum W before any rank-1 recovery, for audits of the
/// projection guarantees. The matrix is empty unless the status is Optimal.
std::pair<CMatrix, DesignStatus> solve_restriction_lifted(const SystemConfig& cfg,
                                                          const ScenarioSpec& spec, double r);

/// Rank-1 recovery: project W^{1/2} onto the direction W^{1/2} h. The result
/// keeps h^H W h, never increases any other quadratic form, and does not
/// increase the trace. Throws DegenerateDirection when W^{1/2} h vanishes.
std::pair<CMatrix, CVector> projection_rank1(const CMatrix& w, const CVector& h);

/// Solve the restricted SDP and recover a rank-1 beamformer that satisfies
/// the restriction itself. Throws RestrictionUnrecoverable when neither the
/// projection nor a rescaled leading eigenvector (power capped at 10 Tr(W))
/// satisfies it.
BeamformerSolution solve_powermin(const SystemConfig& cfg, const ScenarioSpec& spec, double r);

}  // namespace secbeam
