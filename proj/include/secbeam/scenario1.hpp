// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <vector>

#include "secbeam/channel.hpp"
#include "secbeam/modeling.hpp"

namespace secbeam {

/// Result of any of the power-minimization solvers. `margins` holds the slack
/// of each deterministic per-Eve constraint at the returned beamformer
/// (nonnegative when satisfied). `rank_ratio` is lambda2/lambda1 of the
/// lifted solution when a relaxation was solved, 0 otherwise.
struct BeamformerSolution {
    CVector w;
    double power = 0.0;  // ||w||^2
    DesignStatus status = DesignStatus::NumericalTrouble;
    double rank_ratio = 0.0;
    std::vector<double> margins;
};

// Statistical-ECSI scenario: the eavesdropper channels are zero-mean Gaussian
// with known covariance and the chance constraint reduces exactly to the
// deterministic quadratic constraints
//
//     w^H M_k w >= b_k,  M_k = G_k ln(p_k) + (noise_e,k / (noise_b 2^R)) h h^H,
//     b_k = noise_e,k (1 - 2^-R).

struct S1Deterministic {
    std::vector<CMatrix> M;
    std::vector<double> b;
    double rate = 0.0;
    // carried along for the feasibility screen
    CVector h;
    std::vector<CMatrix> G;
    std::vector<double> noise_eves;
    std::vector<double> outage_probs;
    double noise_bob = 1.0;
};

enum class FeasibilityVerdict { SufficientHolds, NecessaryFails, Indeterminate };
const char* to_string(FeasibilityVerdict v);

/// Throws BadRate for R <= 0; requires the StatisticalEcsi variant.
S1Deterministic build_deterministic(const SystemConfig& cfg, const ScenarioSpec& spec, double r);

/// Screen before solving: a sufficient condition guaranteeing feasibility and
/// a necessary one (every M_k must have a positive eigenvalue).
FeasibilityVerdict feasibility_check(const S1Deterministic& det);

/// K = 1 only: w = sqrt(b / lmax(M)) v_max, or Infeasible when lmax <= 0.
BeamformerSolution closed_form_single_eve(const S1Deterministic& det);

/// Semidefinite relaxation min Tr(W) s.t. Tr(M_k W) >= b_k, W psd. The
/// optimum is rank one in exact arithmetic; small numerical rank excess is
/// repaired by a scaled rank-1 projection, anything worse throws
/// RankViolation.
BeamformerSolution solve_sdr(const S1Deterministic& det);

/// Closed-form secrecy-outage probability wrt one Eve with g ~ CN(0, G).
/// The non-outage probability is 1 - exp(x) with
/// x = (noise_e / (w^H G w)) (1 - (noise_b + |h^H w|^2) / (noise_b 2^R)),
/// so this returns min(exp(x), 1).
double analytic_outage(const CVector& w, const CVector& h, const CMatrix& g_cov,
                       double noise_bob, double noise_eve, double r);

}  // namespace secbeam
