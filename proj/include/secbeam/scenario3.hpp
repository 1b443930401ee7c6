// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <vector>

#include "secbeam/bernstein.hpp"
#include "secbeam/scenario1.hpp"

namespace secbeam {

// Both channels imperfect: h = h_est + Eb^{1/2} x_h, g_k = g_est_k +
// Ee_k^{1/2} x_e. The secrecy constraint becomes a chance constraint on the
// stacked Gaussian x = [x_h; x_e] with block-diagonal quadratic form
//
//     A_k(W) = diag( (1/nb) Eb^{1/2} W Eb^{1/2},
//                    -(2^R/ne_k) Ee_k^{1/2} W Ee_k^{1/2} ),
//     a_k(W) = [ (1/nb) Eb^{1/2} W h_est ; -(2^R/ne_k) Ee_k^{1/2} W g_est_k ],
//     c_k(W) = 2^R - 1 - (1/nb) h_est^H W h_est + (2^R/ne_k) g_est_k^H W g_est_k,
//
// restricted through the lower tail bound. The block structure is kept: the
// PSD slack rows are imposed per block (exact, since a block-diagonal matrix
// is psd iff its blocks are) and the zero off-diagonal blocks never enter the
// SOC row.

struct S3Forms {
    CVector h_est;
    std::vector<CVector> g_est;
    CMatrix eb_root;
    std::vector<CMatrix> ee_root;
    std::vector<double> sigma;
    std::vector<double> noise_eves;
    double noise_bob = 1.0;
    double rate = 0.0;

    int n_eves() const { return static_cast<int>(g_est.size()); }
    /// full 2Nt x 2Nt stacked form, for checks at a fixed W
    CMatrix a_mat_full(int k, const CMatrix& w) const;
    CVector a_vec_full(int k, const CMatrix& w) const;
    double c_of(int k, const CMatrix& w) const;
    /// max_k of the lower-fragment violation; <= 0 means the restriction holds
    double violation(const CMatrix& w) const;
};

S3Forms build_forms3(const SystemConfig& cfg, const ScenarioSpec& spec, double r);

ConicProblem build_restriction_sdp3(const SystemConfig& cfg, const ScenarioSpec& spec,
                                    double r);

/// Draw L candidates from CN(0, W) (candidate 0 is the leading eigenvector),
/// scale each by the smallest t in [1, 100] (40-point log sweep plus local
/// bisection; feasibility need not be monotone in t) that makes t w w^H
/// satisfy the restriction, and return the cheapest feasible candidate.
/// Throws RandomizationFailed when none qualifies.
CVector gaussian_randomization(const CMatrix& w, const S3Forms& forms, int l_candidates,
                               const RngStream& rng);

BeamformerSolution solve_powermin3(const SystemConfig& cfg, const ScenarioSpec& spec, double r,
                                   const RngStream& rng = RngStream(0, 0),
                                   int l_candidates = 200);

}  // namespace secbeam
