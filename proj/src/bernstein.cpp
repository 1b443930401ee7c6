// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/bernstein.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "secbeam/errors.hpp"

namespace secbeam {

namespace {

double splus(const CMatrix& m) { return std::max(largest_eigenvalue(m), 0.0); }

double sqrt_norm_term(const CMatrix& a_mat, const CVector& a_vec) {
    return std::sqrt(a_mat.squaredNorm() + 2.0 * a_vec.squaredNorm());
}

}  // namespace

double upper_tail_threshold(const CMatrix& a_mat, const CVector& a_vec, double sigma) {
    return a_mat.trace().real() + std::sqrt(2.0 * sigma) * sqrt_norm_term(a_mat, a_vec) +
           sigma * splus(a_mat);
}

double lower_tail_threshold(const CMatrix& a_mat, const CVector& a_vec, double sigma) {
    return a_mat.trace().real() - std::sqrt(2.0 * sigma) * sqrt_norm_term(a_mat, a_vec) -
           sigma * splus(-a_mat);
}

double sigma_from_outage(double p_out) {
    if (!(p_out > 0.0) || p_out > 1.0) throw BadProbability();
    const double s = static_cast<double>(-std::log(static_cast<long double>(p_out)));
    return std::clamp(s, 0.0, 745.0);
}

double empirical_tail(const QuadFormSpec& q, int n_samples, TailSide side, RngStream& rng) {
    const int n = static_cast<int>(q.A.rows());
    const double thr = (side == TailSide::Upper)
                           ? upper_tail_threshold(q.A, q.a, q.sigma)
                           : lower_tail_threshold(q.A, q.a, q.sigma);
    int hits = 0;
    for (int i = 0; i < n_samples; ++i) {
        const CVector x = rng.cnormal_vector(n);
        const double g = (x.adjoint() * q.A * x)(0).real() + 2.0 * q.a.dot(x).real();
        if (side == TailSide::Upper ? (g >= thr) : (g <= thr)) ++hits;
    }
    return static_cast<double>(hits) / n_samples;
}

LinExpr trace_re(const CMatExpr& m) {
    LinExpr e;
    e.constant = m.constant.trace().real();
    for (const auto& [j, cm] : m.coef) {
        const double t = cm.trace().real();
        if (t != 0.0) e.coef[j] += t;
    }
    return e;
}

CVecExpr vec_of(const CMatExpr& m) {
    const int r = static_cast<int>(m.constant.rows());
    const int c = static_cast<int>(m.constant.cols());
    auto flatten = [&](const CMatrix& mat) {
        CVector v(r * c);
        for (int j = 0; j < c; ++j) v.segment(j * r, r) = mat.col(j);
        return v;
    };
    CVecExpr e;
    e.constant = flatten(m.constant);
    for (const auto& [j, cm] : m.coef) e.coef[j] = flatten(cm);
    return e;
}

namespace {

// Shared shape of both fragments; `sign` is +1 for the upper tail (v I - A
// psd, threshold subtracted from c) and -1 for the lower tail.
void add_fragment(ConeModel& model, const std::vector<CMatExpr>& a_blocks,
                  const std::vector<CVecExpr>& a_vec_blocks, const LinExpr& c, double sigma,
                  int sign) {
    LinExpr trace;
    for (const auto& blk : a_blocks) trace += trace_re(blk);

    if (sigma == 0.0) {
        // mean constraint only: Tr(A) <= c (upper) or Tr(A) >= c (lower)
        if (sign > 0)
            model.add_nonneg(c - trace);
        else
            model.add_nonneg(trace - c);
        return;
    }

    const int mu = model.add_var();
    const int v = model.add_var();
    // upper: Tr(A) + sqrt(2s) mu + s v <= c; lower: Tr(A) - sqrt(2s) mu - s v >= c
    LinExpr resid = (sign > 0) ? c - trace : trace - c;
    resid -= std::sqrt(2.0 * sigma) * LinExpr::variable(mu);
    resid -= sigma * LinExpr::variable(v);
    model.add_nonneg(resid);

    CVecExpr norm_arg;
    norm_arg.constant = CVector(0);
    for (const auto& blk : a_blocks) norm_arg.append(vec_of(blk));
    for (const auto& av : a_vec_blocks) {
        CVecExpr scaled = av;
        scaled *= std::numbers::sqrt2;
        norm_arg.append(scaled);
    }
    model.add_soc(LinExpr::variable(mu), norm_arg);

    for (const auto& blk : a_blocks) {
        CMatExpr psd = blk;
        psd *= static_cast<double>(-sign);  // upper: vI - A; lower: vI + A
        psd.add_scaled_identity(LinExpr::variable(v));
        model.add_psd(psd);
    }
    model.add_nonneg(LinExpr::variable(v));
}

}  // namespace

void add_upper_tail_fragment(ConeModel& model, const std::vector<CMatExpr>& a_blocks,
                             const std::vector<CVecExpr>& a_vec_blocks, const LinExpr& c,
                             double sigma) {
    add_fragment(model, a_blocks, a_vec_blocks, c, sigma, +1);
}

void add_lower_tail_fragment(ConeModel& model, const std::vector<CMatExpr>& a_blocks,
                             const std::vector<CVecExpr>& a_vec_blocks, const LinExpr& c,
                             double sigma) {
    add_fragment(model, a_blocks, a_vec_blocks, c, sigma, -1);
}

double upper_fragment_violation(const CMatrix& a_mat, const CVector& a_vec, double c,
                                double sigma) {
    return upper_tail_threshold(a_mat, a_vec, sigma) - c;
}

double lower_fragment_violation(const CMatrix& a_mat, const CVector& a_vec, double c,
                                double sigma) {
    return c - lower_tail_threshold(a_mat, a_vec, sigma);
}

}  // namespace secbeam
