// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include "secbeam/modeling.hpp"
#include "secbeam/rng.hpp"

namespace secbeam {

// Tail bounds for Gaussian quadratic forms G = x^H A x + 2 Re{x^H a} with
// x ~ CN(0, I):
//
//     Pr{ G >= T_upper(A, a, sigma) } <= exp(-sigma)
//     Pr{ G <= T_lower(A, a, sigma) } <= exp(-sigma)
//
// and the conic "safe restriction" fragments that impose the corresponding
// inequality T_upper <= c (resp. T_lower >= c) as linear + SOC + PSD rows on
// an affine matrix family A(xi).

struct QuadFormSpec {
    CMatrix A;
    CVector a;
    double c = 0.0;
    double sigma = 0.0;  // -ln p_out
};

enum class TailSide { Upper, Lower };

/// Tr(A) + sqrt(2 sigma) sqrt(||A||_F^2 + 2||a||^2) + sigma * max(lmax(A), 0)
double upper_tail_threshold(const CMatrix& a_mat, const CVector& a_vec, double sigma);

/// Tr(A) - sqrt(2 sigma) sqrt(||A||_F^2 + 2||a||^2) - sigma * max(lmax(-A), 0)
double lower_tail_threshold(const CMatrix& a_mat, const CVector& a_vec, double sigma);

/// -ln(p_out), clamped to [0, 745]. Throws BadProbability outside (0, 1].
double sigma_from_outage(double p_out);

/// Monte Carlo estimate of Pr{G >= T_upper} (Upper) or Pr{G <= T_lower}
/// (Lower) at the spec's own sigma.
double empirical_tail(const QuadFormSpec& q, int n_samples, TailSide side, RngStream& rng);

/// Re Tr of a Hermitian matrix expression.
LinExpr trace_re(const CMatExpr& m);

/// Column stacking of a matrix expression.
CVecExpr vec_of(const CMatExpr& m);

// Fragments. The quadratic-form matrix may be block diagonal; passing it as
// blocks keeps the PSD rows at the block sides (exact: a block-diagonal
// matrix is psd iff each block is, its extreme eigenvalue is the max over
// blocks, and trace/Frobenius norm add up) and drops the structurally zero
// off-diagonal entries from the SOC row. `a_blocks` are the matching
// segments of the linear term. With sigma == 0 the fragment collapses to the
// mean constraint and no slack variables are created. When every block is
// identically zero the constraint degenerates to the deterministic sign
// check on c.

void add_upper_tail_fragment(ConeModel& model, const std::vector<CMatExpr>& a_blocks,
                             const std::vector<CVecExpr>& a_vec_blocks, const LinExpr& c,
                             double sigma);

void add_lower_tail_fragment(ConeModel& model, const std::vector<CMatExpr>& a_blocks,
                             const std::vector<CVecExpr>& a_vec_blocks, const LinExpr& c,
                             double sigma);

/// T_upper(A, a, sigma) - c at a fixed point; <= 0 means the restriction
/// holds. Equals the fragment with its slacks at their optimal values.
double upper_fragment_violation(const CMatrix& a_mat, const CVector& a_vec, double c,
                                double sigma);

/// c - T_lower(A, a, sigma); <= 0 means the restriction holds.
double lower_fragment_violation(const CMatrix& a_mat, const CVector& a_vec, double c,
                                double sigma);

}  // namespace secbeam
