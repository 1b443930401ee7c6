// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <string>
#include <vector>

#include "secbeam/hermitian.hpp"

namespace secbeam {

// Standard-form cone program
//
//     minimize    c' x
//     subject to  A x = b,   x in K,
//
// where K is an ordered product of Free, NonNeg, SecondOrder and Psd
// segments. Psd segments are stored in scaled-vectorized form (svec): the
// lower triangle column by column with off-diagonal entries multiplied by
// sqrt(2), so plain dot products equal trace inner products.

struct Cone {
    enum class Kind { Free, NonNeg, SecondOrder, Psd };
    Kind kind = Kind::Free;
    int dim = 0;  // vector length; for Psd, the matrix side

    int size() const {
        return kind == Kind::Psd ? dim * (dim + 1) / 2 : dim;
    }

    static Cone free_var(int n) { return {Kind::Free, n}; }
    static Cone nonneg(int n) { return {Kind::NonNeg, n}; }
    static Cone soc(int d) { return {Kind::SecondOrder, d}; }
    static Cone psd(int side) { return {Kind::Psd, side}; }
};

struct ConicProblem {
    RVector c;
    RMatrix A;
    RVector b;
    std::vector<Cone> cones;

    int dim() const;
    void validate() const;  // throws DimensionMismatch on inconsistency
    std::string dump_json() const;
};

enum class SolveStatus {
    Optimal,
    PrimalInfeasible,
    DualInfeasible,
    MaxIter,
    NumericalTrouble,
};

const char* to_string(SolveStatus s);

struct SolverOptions {
    double feas_tol = 1e-8;
    double gap_tol = 1e-7;  // relative duality gap
    int max_iter = 200;
    bool verbose = false;
};

struct ConicSolution {
    RVector x;  // primal
    RVector y;  // equality multipliers
    RVector z;  // cone multipliers (dual slack)
    SolveStatus status = SolveStatus::NumericalTrouble;
    double gap = 0.0;       // <x, z>
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    int iterations = 0;
};

ConicSolution solve(const ConicProblem& p, const SolverOptions& opts = {});

struct KktReport {
    double primal_residual = 0.0;       // ||A x - b||
    double dual_residual = 0.0;         // ||A' y + z - c||
    double rel_primal_residual = 0.0;   // / (1 + ||b||)
    double rel_dual_residual = 0.0;     // / (1 + ||c||)
    double complementarity = 0.0;       // <x, z> over cone segments
    std::vector<double> cone_distance_x;  // per segment, 0 when inside
    std::vector<double> cone_distance_z;
};

KktReport kkt_residuals(const ConicProblem& p, const ConicSolution& s);

// svec/smat helpers shared with the modeling layer.
RVector svec(const RMatrix& m);
RMatrix smat(const RVector& v, int side);
int svec_dim(int side);

}  // namespace secbeam
