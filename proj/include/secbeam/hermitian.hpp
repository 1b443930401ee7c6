// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "secbeam/errors.hpp"

namespace secbeam {

using CVector = Eigen::VectorXcd;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;
using Complex = std::complex<double>;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kPsdEigTol = 1e-10;

/// Full spectrum of a Hermitian matrix, eigenvalues descending.
/// Eigenvector phases are fixed so that the largest-magnitude entry of each
/// column is real and positive.
struct EigDecomp {
    RVector values;   // descending
    CMatrix vectors;  // orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Throws NonHermitian when max |M - M^H| exceeds tol.
void check_hermitian(const CMatrix& m, double tol = kHermTol);

/// (M + M^H)/2 after the Hermitian check; removes asymmetric rounding noise.
CMatrix symmetrize(const CMatrix& m, double tol = kHermTol);

EigDecomp eig_hermitian(const CMatrix& m);

/// Largest eigenvalue of a Hermitian matrix.
double largest_eigenvalue(const CMatrix& m);

/// Nearest PSD matrix in Frobenius norm: negative eigenvalues set to zero.
/// For solver outputs whose cone distance is within the feasibility tolerance.
CMatrix psd_project(const CMatrix& m);

/// Hermitian PSD square root. Eigenvalues in [-1e-10, 0) are clipped to zero;
/// anything below that throws NotPsd.
CMatrix psd_sqrt(const CMatrix& m);

/// P = v v^H / ||v||^2. Throws ZeroVector for ||v|| <= 1e-12.
CMatrix projection_onto(const CVector& v);

/// Real symmetric embedding [[Re M, -Im M], [Im M, Re M]] of a Hermitian M.
/// The embedding carries each eigenvalue of M twice and doubles the trace.
RMatrix embed_real(const CMatrix& m);

/// Number of eigenvalues above ratio_tol times the largest one.
/// Returns 0 when the largest eigenvalue is at most 1e-12.
int numerical_rank(const CMatrix& m, double ratio_tol);

}  // namespace secbeam
