// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <map>
#include <vector>

#include "secbeam/conic.hpp"
#include "secbeam/hermitian.hpp"

namespace secbeam {

// Small modeling layer over the cone solver. Design variables (a Hermitian
// matrix variable plus scalar slacks) are mapped onto the *dual* side of the
// standard form: the model
//
//     minimize    f' xi
//     subject to  d_i - M_i xi in K_i
//
// becomes  max b'y s.t. c - A'y in K  with y = xi, b = -f. The solver's
// normal equations then have the size of the design vector, a few dozen
// entries, instead of the cone dimension.

class ConeModel;

/// Real affine function of the design vector.
struct LinExpr {
    std::map<int, double> coef;
    double constant = 0.0;

    LinExpr& operator+=(const LinExpr& o);
    LinExpr& operator-=(const LinExpr& o);
    LinExpr& operator*=(double s);
    LinExpr& operator+=(double s) {
        constant += s;
        return *this;
    }
    friend LinExpr operator+(LinExpr a, const LinExpr& b) { return a += b; }
    friend LinExpr operator-(LinExpr a, const LinExpr& b) { return a -= b; }
    friend LinExpr operator*(double s, LinExpr a) { return a *= s; }

    static LinExpr constant_of(double v) {
        LinExpr e;
        e.constant = v;
        return e;
    }
    static LinExpr variable(int idx, double scale = 1.0) {
        LinExpr e;
        e.coef[idx] = scale;
        return e;
    }
};

/// Complex-vector affine function of the design vector.
struct CVecExpr {
    CVector constant;
    std::map<int, CVector> coef;
    int size() const { return static_cast<int>(constant.size()); }

    CVecExpr& append(const CVecExpr& o);  // stack below
    CVecExpr& operator*=(double s);
};

/// Hermitian-matrix affine function of the design vector.
struct CMatExpr {
    CMatrix constant;
    std::map<int, CMatrix> coef;
    int side() const { return static_cast<int>(constant.rows()); }

    CMatExpr& operator+=(const CMatExpr& o);
    CMatExpr& operator-=(const CMatExpr& o);
    CMatExpr& operator*=(double s);
    /// adds e(xi) * I
    CMatExpr& add_scaled_identity(const LinExpr& e);
};

/// Handle to an n x n Hermitian matrix variable: n^2 real parameters, one per
/// basis matrix (diagonals, then re/im pairs for each off-diagonal).
class HermVar {
  public:
    int side() const { return side_; }

    /// Re Tr(S W) for Hermitian S (exact for the quadratic forms used here).
    LinExpr inner(const CMatrix& s) const;
    LinExpr trace() const;
    /// v^H W v
    LinExpr quad(const CVector& v) const;
    /// vec(L W R) as a complex affine vector
    CVecExpr left_right_vec(const CMatrix& l, const CMatrix& r) const;
    /// L W g
    CVecExpr matvec(const CMatrix& l, const CVector& g) const;
    /// B^H W B as a Hermitian matrix expression
    CMatExpr congruence(const CMatrix& b) const;
    /// W itself
    CMatExpr expr() const;

  private:
    friend class ConeModel;
    HermVar(int side, int first_param) : side_(side), first_(first_param) {}
    CMatrix basis(int j) const;  // j in [0, side^2)
    int side_ = 0;
    int first_ = 0;
};

enum class DesignStatus { Optimal, Infeasible, Unbounded, NumericalTrouble };
const char* to_string(DesignStatus s);

struct ModelSolution {
    DesignStatus status = DesignStatus::NumericalTrouble;
    RVector xi;
    double objective = 0.0;
    ConicSolution raw;
};

class ConeModel {
  public:
    int add_var();  // scalar design variable, returns its index
    HermVar add_hermitian(int side);

    void add_nonneg(const LinExpr& e);              // e(xi) >= 0
    void add_soc(const LinExpr& t, const CVecExpr& v);  // ||v(xi)|| <= t(xi)
    void add_psd(const CMatExpr& m);                // m(xi) psd

    void minimize(const LinExpr& f);

    ConicProblem build() const;  // the standard-form problem handed to solve()
    ModelSolution run(const SolverOptions& opts = {}) const;

    CMatrix value(const HermVar& w, const RVector& xi) const;
    double value(const LinExpr& e, const RVector& xi) const;

    int n_params() const { return n_params_; }

  private:
    int n_params_ = 0;
    LinExpr objective_;
    std::vector<LinExpr> nonneg_;
    std::vector<std::pair<LinExpr, CVecExpr>> socs_;
    std::vector<CMatExpr> psds_;
};

}  // namespace secbeam
