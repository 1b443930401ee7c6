// SPDX-License-Identifier: Apache-2.0

#include "secbeam/conic.hpp"

#include <cmath>

#include "doctest.h"
#include "secbeam/rng.hpp"

using namespace secbeam;

namespace {

void check_optimal(const ConicProblem& p, const ConicSolution& s, double tol = 1e-6) {
    REQUIRE(s.status == SolveStatus::Optimal);
    const KktReport r = kkt_residuals(p, s);
    CHECK(r.rel_primal_residual < tol);
    CHECK(r.rel_dual_residual < tol);
    for (double d : r.cone_distance_x) CHECK(d < tol);
    for (double d : r.cone_distance_z) CHECK(d < tol);
}

}  // namespace

TEST_CASE("svec/smat round trip and inner products") {
    RMatrix m(3, 3);
    m << 1, 2, 3, 2, 4, 5, 3, 5, 6;
    const RVector v = svec(m);
    CHECK(v.size() == svec_dim(3));
    CHECK((smat(v, 3) - m).cwiseAbs().maxCoeff() < 1e-14);

    RMatrix n(3, 3);
    n << 2, 0, 1, 0, 3, 0, 1, 0, 4;
    CHECK(svec(m).dot(svec(n)) == doctest::Approx((m * n).trace()));
}

TEST_CASE("tiny LP") {
    // minimize -x  s.t.  x + s = 1, x >= 0, s >= 0
    ConicProblem p;
    p.c = RVector(2);
    p.c << -1.0, 0.0;
    p.A = RMatrix(1, 2);
    p.A << 1.0, 1.0;
    p.b = RVector::Constant(1, 1.0);
    p.cones = {Cone::nonneg(2)};
    const ConicSolution s = solve(p);
    check_optimal(p, s);
    CHECK(s.primal_obj == doctest::Approx(-1.0).epsilon(1e-6));
    CHECK(s.x(0) == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("free variable via presolve split") {
    // minimize -t  s.t.  t + s = 3, t free, s >= 0  ->  t* = 3
    ConicProblem p;
    p.c = RVector(2);
    p.c << -1.0, 0.0;
    p.A = RMatrix(1, 2);
    p.A << 1.0, 1.0;
    p.b = RVector::Constant(1, 3.0);
    p.cones = {Cone::free_var(1), Cone::nonneg(1)};
    const ConicSolution s = solve(p);
    check_optimal(p, s);
    CHECK(s.x(0) == doctest::Approx(3.0).epsilon(1e-6));
    CHECK(std::abs(s.z(0)) < 1e-6);  // free segments carry zero dual slack
}

TEST_CASE("second-order cone") {
    // minimize x1 + x2  s.t.  x0 = 1, ||(x1, x2)|| <= x0
    ConicProblem p;
    p.c = RVector(3);
    p.c << 0.0, 1.0, 1.0;
    p.A = RMatrix(1, 3);
    p.A << 1.0, 0.0, 0.0;
    p.b = RVector::Constant(1, 1.0);
    p.cones = {Cone::soc(3)};
    const ConicSolution s = solve(p);
    check_optimal(p, s);
    CHECK(s.primal_obj == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-6));
    CHECK(s.x(1) == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-5));
}

TEST_CASE("small SDP with known optimum") {
    // minimize Tr(X)  s.t.  Tr(diag(2,1) X) = 1, X psd  ->  0.5
    ConicProblem p;
    p.c = svec(RMatrix::Identity(2, 2));
    RMatrix d = RMatrix::Zero(2, 2);
    d.diagonal() << 2.0, 1.0;
    p.A = svec(d).transpose();
    p.b = RVector::Constant(1, 1.0);
    p.cones = {Cone::psd(2)};
    const ConicSolution s = solve(p);
    check_optimal(p, s);
    CHECK(s.primal_obj == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("primal infeasible SDP is certified") {
    // Tr(-I X) = 1 with X psd has no solution.
    ConicProblem p;
    p.c = svec(RMatrix::Identity(2, 2));
    p.A = svec(RMatrix(-RMatrix::Identity(2, 2))).transpose();
    p.b = RVector::Constant(1, 1.0);
    p.cones = {Cone::psd(2)};
    const ConicSolution s = solve(p);
    CHECK(s.status == SolveStatus::PrimalInfeasible);
    // Farkas: b'y = 1, A'y + z = 0 with z in the dual cone
    CHECK(p.b.dot(s.y) == doctest::Approx(1.0).epsilon(1e-6));
    CHECK((p.A.transpose() * s.y + s.z).norm() < 1e-6);
}

TEST_CASE("unbounded problem is reported dual infeasible") {
    ConicProblem p;
    p.c = RVector(2);
    p.c << -1.0, 0.0;
    p.A = RMatrix(0, 2);
    p.b = RVector(0);
    p.cones = {Cone::nonneg(2)};
    const ConicSolution s = solve(p);
    CHECK(s.status == SolveStatus::DualInfeasible);
    CHECK(p.c.dot(s.x) < 0.0);
}

TEST_CASE("duplicate equality rows are tolerated") {
    ConicProblem p;
    p.c = RVector(2);
    p.c << -1.0, 0.0;
    p.A = RMatrix(2, 2);
    p.A << 1.0, 1.0, 2.0, 2.0;
    p.b = RVector(2);
    p.b << 1.0, 2.0;
    p.cones = {Cone::nonneg(2)};
    const ConicSolution s = solve(p);
    check_optimal(p, s);
    CHECK(s.primal_obj == doctest::Approx(-1.0).epsilon(1e-6));
}

TEST_CASE("inconsistent equality rows are primal infeasible") {
    ConicProblem p;
    p.c = RVector(2);
    p.c << 1.0, 1.0;
    p.A = RMatrix(2, 2);
    p.A << 1.0, 1.0, 1.0, 1.0;
    p.b = RVector(2);
    p.b << 1.0, 2.0;
    p.cones = {Cone::nonneg(2)};
    const ConicSolution s = solve(p);
    CHECK(s.status == SolveStatus::PrimalInfeasible);
}

TEST_CASE("random mixed-cone problems constructed to be strictly feasible") {
    RngStream rng(101, 0);
    for (int trial = 0; trial < 20; ++trial) {
        RngStream tr = rng.substream(trial);
        std::vector<Cone> cones = {Cone::nonneg(3), Cone::soc(4), Cone::psd(3)};
        int n = 0;
        for (const auto& k : cones) n += k.size();
        const int m = 5;

        // strictly interior primal point
        RVector x0 = RVector::Zero(n);
        for (int i = 0; i < 3; ++i) x0(i) = 0.5 + tr.uniform();
        x0(3) = 3.0;
        for (int i = 4; i < 7; ++i) x0(i) = tr.normal() * 0.5;
        {
            RMatrix g(3, 3);
            for (int i = 0; i < 9; ++i) g.data()[i] = tr.normal();
            const RMatrix spd =
                g * g.transpose() + 0.5 * RMatrix::Identity(3, 3);
            x0.segment(7, 6) = svec(spd);
        }
        // strictly interior dual slack, same construction
        RVector z0 = RVector::Zero(n);
        for (int i = 0; i < 3; ++i) z0(i) = 0.5 + tr.uniform();
        z0(3) = 2.5;
        for (int i = 4; i < 7; ++i) z0(i) = tr.normal() * 0.4;
        {
            RMatrix g(3, 3);
            for (int i = 0; i < 9; ++i) g.data()[i] = tr.normal();
            z0.segment(7, 6) = svec(RMatrix(g * g.transpose() + 0.5 * RMatrix::Identity(3, 3)));
        }

        ConicProblem p;
        p.cones = cones;
        p.A = RMatrix(m, n);
        for (int i = 0; i < m * n; ++i) p.A.data()[i] = tr.normal();
        p.b = p.A * x0;
        RVector y0(m);
        for (int i = 0; i < m; ++i) y0(i) = tr.normal();
        p.c = p.A.transpose() * y0 + z0;

        const ConicSolution s = solve(p);
        check_optimal(p, s, 1e-5);
        // weak duality against the known feasible pair
        CHECK(s.primal_obj <= p.c.dot(x0) + 1e-5 * (1.0 + std::abs(s.primal_obj)));
        CHECK(s.dual_obj >= p.b.dot(y0) - 1e-5 * (1.0 + std::abs(s.dual_obj)));
    }
}

TEST_CASE("objective scaling invariance") {
    ConicProblem p;
    p.c = svec(RMatrix::Identity(2, 2));
    RMatrix d = RMatrix::Zero(2, 2);
    d.diagonal() << 2.0, 1.0;
    p.A = svec(d).transpose();
    p.b = RVector::Constant(1, 1.0);
    p.cones = {Cone::psd(2)};
    const ConicSolution s1 = solve(p);
    p.c *= 10.0;
    const ConicSolution s2 = solve(p);
    CHECK(s2.primal_obj == doctest::Approx(10.0 * s1.primal_obj).epsilon(1e-6));
}

TEST_CASE("validate flags inconsistent shapes and dump_json emits the data") {
    ConicProblem p;
    p.c = RVector::Ones(2);
    p.A = RMatrix::Ones(1, 3);
    p.b = RVector::Ones(1);
    p.cones = {Cone::nonneg(2)};
    CHECK_THROWS_AS(p.validate(), DimensionMismatch);
    p.A = RMatrix::Ones(1, 2);
    CHECK_NOTHROW(p.validate());
    const std::string j = p.dump_json();
    CHECK(j.find("\"cones\"") != std::string::npos);
    CHECK(j.find("nonneg") != std::string::npos);
}
