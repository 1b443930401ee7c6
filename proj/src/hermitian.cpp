// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/hermitian.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

namespace secbeam {

void check_hermitian(const CMatrix& m, double tol) {
    if (m.rows() != m.cols()) throw NonHermitian("matrix is not square");
    const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (dev > tol) throw NonHermitian();
    if (!m.allFinite()) throw NonHermitian("matrix has non-finite entries");
}

CMatrix symmetrize(const CMatrix& m, double tol) {
    check_hermitian(m, tol);
    return 0.5 * (m + m.adjoint().eval());
}

EigDecomp eig_hermitian(const CMatrix& m) {
    const CMatrix h = symmetrize(m);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(h);
    const Eigen::Index n = h.rows();
    EigDecomp out;
    out.values.resize(n);
    out.vectors.resize(n, n);
    // Eigen returns ascending order; flip to descending.
    for (Eigen::Index i = 0; i < n; ++i) {
        out.values(i) = es.eigenvalues()(n - 1 - i);
        out.vectors.col(i) = es.eigenvectors().col(n - 1 - i);
    }
    // Phase convention: largest-magnitude entry real-positive.
    for (Eigen::Index i = 0; i < n; ++i) {
        Eigen::Index imax = 0;
        out.vectors.col(i).cwiseAbs().maxCoeff(&imax);
        const Complex pivot = out.vectors(imax, i);
        const double mag = std::abs(pivot);
        if (mag > 0.0) out.vectors.col(i) *= std::conj(pivot) / mag;
    }
    return out;
}

double largest_eigenvalue(const CMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> es(symmetrize(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues().maxCoeff();
}

CMatrix psd_project(const CMatrix& m) {
    EigDecomp ed = eig_hermitian(m);
    RVector lam = ed.values.cwiseMax(0.0);
    return ed.vectors * lam.asDiagonal() * ed.vectors.adjoint();
}

CMatrix psd_sqrt(const CMatrix& m) {
    EigDecomp ed = eig_hermitian(m);
    RVector lam = ed.values;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam(i) < -kPsdEigTol) throw NotPsd();
        lam(i) = std::sqrt(std::max(lam(i), 0.0));
    }
    return ed.vectors * lam.asDiagonal() * ed.vectors.adjoint();
}

CMatrix projection_onto(const CVector& v) {
    const double nrm2 = v.squaredNorm();
    if (!(nrm2 > 1e-24)) throw ZeroVector();
    return (v * v.adjoint()) / nrm2;
}

RMatrix embed_real(const CMatrix& m) {
    check_hermitian(m);
    const Eigen::Index n = m.rows();
    RMatrix s(2 * n, 2 * n);
    s.topLeftCorner(n, n) = m.real();
    s.bottomRightCorner(n, n) = m.real();
    s.topRightCorner(n, n) = -m.imag();
    s.bottomLeftCorner(n, n) = m.imag();
    // Exact symmetry for the downstream cone code.
    return 0.5 * (s + s.transpose().eval());
}

int numerical_rank(const CMatrix& m, double ratio_tol) {
    EigDecomp ed = eig_hermitian(m);
    const double lead = ed.values(0);
    if (lead <= 1e-12) return 0;
    int r = 0;
    for (Eigen::Index i = 0; i < ed.values.size(); ++i)
        if (ed.values(i) > ratio_tol * lead) ++r;
    return r;
}

}  // namespace secbeam
