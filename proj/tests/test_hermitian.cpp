// SPDX-License-Identifier: Apache-2.0

#include "secbeam/hermitian.hpp"

#include "doctest.h"
#include "secbeam/errors.hpp"

using namespace secbeam;

TEST_CASE("check_hermitian accepts Hermitian and rejects the rest") {
    CMatrix m(2, 2);
    m << Complex(1, 0), Complex(2, 3), Complex(2, -3), Complex(4, 0);
    CHECK_NOTHROW(check_hermitian(m));
    m(0, 1) = Complex(2, 3.1);
    CHECK_THROWS_AS(check_hermitian(m), NonHermitian);
}

TEST_CASE("symmetrize removes rounding noise below tolerance") {
    CMatrix m(2, 2);
    m << Complex(1, 1e-12), Complex(2, 3), Complex(2, -3 - 1e-12), Complex(4, 0);
    const CMatrix s = symmetrize(m);
    CHECK((s - s.adjoint()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(s(0, 1) == std::conj(s(1, 0)));
}

TEST_CASE("eig_hermitian: 2x2 with known spectrum, descending order") {
    CMatrix m(2, 2);
    m << 2.0, 1.0, 1.0, 2.0;
    const EigDecomp e = eig_hermitian(m);
    CHECK(e.values(0) == doctest::Approx(3.0));
    CHECK(e.values(1) == doctest::Approx(1.0));
    // reconstruction
    const CMatrix rec =
        e.vectors * e.values.cast<Complex>().asDiagonal() * e.vectors.adjoint();
    CHECK((rec - m).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("eig_hermitian phase convention: pivot entry real positive") {
    CMatrix m(2, 2);
    m << Complex(2, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
    const EigDecomp e = eig_hermitian(m);
    for (int c = 0; c < 2; ++c) {
        Eigen::Index piv;
        e.vectors.col(c).cwiseAbs().maxCoeff(&piv);
        CHECK(e.vectors(piv, c).imag() == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(e.vectors(piv, c).real() > 0.0);
    }
}

TEST_CASE("largest_eigenvalue") {
    CMatrix m(3, 3);
    m.setZero();
    m.diagonal() << 5.0, -2.0, 1.0;
    CHECK(largest_eigenvalue(m) == doctest::Approx(5.0));
}

TEST_CASE("psd_sqrt: exact on a diagonal case, squares back in general") {
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    const CMatrix r = psd_sqrt(d);
    CHECK(std::abs(r(0, 0) - Complex(std::sqrt(2.0), 0)) < 1e-14);
    CHECK(std::abs(r(1, 1)) < 1e-14);

    CMatrix m(2, 2);
    m << Complex(3, 0), Complex(1, 1), Complex(1, -1), Complex(2, 0);
    const CMatrix s = psd_sqrt(m);
    CHECK((s * s - m).cwiseAbs().maxCoeff() < 1e-12);

    CMatrix neg = CMatrix::Identity(2, 2);
    neg(1, 1) = -1e-6;
    CHECK_THROWS_AS(psd_sqrt(neg), NotPsd);

    // tiny negative eigenvalues are clipped, not rejected
    CMatrix near = CMatrix::Identity(2, 2);
    near(1, 1) = -5e-11;
    CHECK_NOTHROW(psd_sqrt(near));
}

TEST_CASE("projection_onto") {
    CVector v(2);
    v << Complex(0, 2), Complex(0, 0);
    const CMatrix p = projection_onto(v);
    CHECK(std::abs(p(0, 0) - Complex(1, 0)) < 1e-14);
    CHECK((p * p - p).cwiseAbs().maxCoeff() < 1e-14);
    CHECK_THROWS_AS(projection_onto(CVector::Zero(3)), ZeroVector);
}

TEST_CASE("embed_real doubles the spectrum and the trace") {
    CMatrix m(2, 2);
    m << Complex(2, 0), Complex(0, 1), Complex(0, -1), Complex(2, 0);
    const RMatrix e = embed_real(m);
    CHECK(e.rows() == 4);
    CHECK((e - e.transpose()).cwiseAbs().maxCoeff() == 0.0);
    CHECK(e.trace() == doctest::Approx(2.0 * m.real().trace()));
    Eigen::SelfAdjointEigenSolver<RMatrix> es(e, Eigen::EigenvaluesOnly);
    // spectrum of m is {1, 3}; embedding repeats each twice
    CHECK(es.eigenvalues()(0) == doctest::Approx(1.0));
    CHECK(es.eigenvalues()(1) == doctest::Approx(1.0));
    CHECK(es.eigenvalues()(2) == doctest::Approx(3.0));
    CHECK(es.eigenvalues()(3) == doctest::Approx(3.0));
}

TEST_CASE("numerical_rank") {
    CMatrix m = CMatrix::Zero(3, 3);
    m(0, 0) = 1.0;
    m(1, 1) = 1e-8;
    CHECK(numerical_rank(m, 1e-6) == 1);
    CHECK(numerical_rank(m, 1e-9) == 2);
    CHECK(numerical_rank(CMatrix::Zero(3, 3), 1e-6) == 0);
}
