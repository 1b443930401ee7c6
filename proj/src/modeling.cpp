// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/modeling.hpp"

#include "secbeam/errors.hpp"

namespace secbeam {

LinExpr& LinExpr::operator+=(const LinExpr& o) {
    for (const auto& [j, v] : o.coef) coef[j] += v;
    constant += o.constant;
    return *this;
}

LinExpr& LinExpr::operator-=(const LinExpr& o) {
    for (const auto& [j, v] : o.coef) coef[j] -= v;
    constant -= o.constant;
    return *this;
}

LinExpr& LinExpr::operator*=(double s) {
    for (auto& [j, v] : coef) v *= s;
    constant *= s;
    return *this;
}

CVecExpr& CVecExpr::append(const CVecExpr& o) {
    const int n0 = size(), n1 = o.size();
    CVector cc(n0 + n1);
    cc << constant, o.constant;
    constant = cc;
    for (auto& [j, v] : coef) {
        CVector ext = CVector::Zero(n0 + n1);
        ext.head(n0) = v;
        v = ext;
    }
    for (const auto& [j, v] : o.coef) {
        auto it = coef.find(j);
        if (it == coef.end()) {
            CVector ext = CVector::Zero(n0 + n1);
            ext.tail(n1) = v;
            coef[j] = ext;
        } else {
            it->second.tail(n1) += v;
        }
    }
    return *this;
}

CVecExpr& CVecExpr::operator*=(double s) {
    constant *= s;
    for (auto& [j, v] : coef) v *= s;
    return *this;
}

CMatExpr& CMatExpr::operator+=(const CMatExpr& o) {
    if (side() != o.side()) throw DimensionMismatch("matrix expression sides differ");
    constant += o.constant;
    for (const auto& [j, m] : o.coef) {
        auto it = coef.find(j);
        if (it == coef.end())
            coef[j] = m;
        else
            it->second += m;
    }
    return *this;
}

CMatExpr& CMatExpr::operator-=(const CMatExpr& o) {
    CMatExpr neg = o;
    neg *= -1.0;
    return *this += neg;
}

CMatExpr& CMatExpr::operator*=(double s) {
    constant *= s;
    for (auto& [j, m] : coef) m *= s;
    return *this;
}

CMatExpr& CMatExpr::add_scaled_identity(const LinExpr& e) {
    const CMatrix id = CMatrix::Identity(side(), side());
    constant += e.constant * id;
    for (const auto& [j, v] : e.coef) {
        auto it = coef.find(j);
        if (it == coef.end())
            coef[j] = v * id;
        else
            it->second += v * id;
    }
    return *this;
}

CMatrix HermVar::basis(int j) const {
    CMatrix b = CMatrix::Zero(side_, side_);
    if (j < side_) {
        b(j, j) = 1.0;
        return b;
    }
    int idx = side_;
    for (int col = 0; col < side_; ++col)
        for (int row = col + 1; row < side_; ++row) {
            if (idx == j) {  // real part of W(row, col)'s mirror W(col, row)
                b(col, row) = 1.0;
                b(row, col) = 1.0;
                return b;
            }
            ++idx;
            if (idx == j) {  // imaginary part
                b(col, row) = Complex(0, 1);
                b(row, col) = Complex(0, -1);
                return b;
            }
            ++idx;
        }
    throw DimensionMismatch("basis index out of range");
}

LinExpr HermVar::inner(const CMatrix& s) const {
    LinExpr e;
    const int p = side_ * side_;
    for (int j = 0; j < p; ++j) {
        const double v = (s * basis(j)).trace().real();
        if (v != 0.0) e.coef[first_ + j] = v;
    }
    return e;
}

LinExpr HermVar::trace() const {
    LinExpr e;
    for (int j = 0; j < side_; ++j) e.coef[first_ + j] = 1.0;
    return e;
}

LinExpr HermVar::quad(const CVector& v) const { return inner(v * v.adjoint()); }

CVecExpr HermVar::left_right_vec(const CMatrix& l, const CMatrix& r) const {
    CVecExpr e;
    const int rows = static_cast<int>(l.rows());
    const int cols = static_cast<int>(r.cols());
    e.constant = CVector::Zero(rows * cols);
    const int p = side_ * side_;
    for (int j = 0; j < p; ++j) {
        const CMatrix m = l * basis(j) * r;
        CVector v(rows * cols);
        for (int c = 0; c < cols; ++c) v.segment(c * rows, rows) = m.col(c);
        if (v.cwiseAbs().maxCoeff() > 0.0) e.coef[first_ + j] = v;
    }
    return e;
}

CVecExpr HermVar::matvec(const CMatrix& l, const CVector& g) const {
    CVecExpr e;
    e.constant = CVector::Zero(l.rows());
    const int p = side_ * side_;
    for (int j = 0; j < p; ++j) {
        const CVector v = l * basis(j) * g;
        if (v.cwiseAbs().maxCoeff() > 0.0) e.coef[first_ + j] = v;
    }
    return e;
}

CMatExpr HermVar::congruence(const CMatrix& b) const {
    CMatExpr e;
    const int n = static_cast<int>(b.cols());
    e.constant = CMatrix::Zero(n, n);
    const int p = side_ * side_;
    for (int j = 0; j < p; ++j) {
        const CMatrix m = b.adjoint() * basis(j) * b;
        if (m.cwiseAbs().maxCoeff() > 0.0) e.coef[first_ + j] = m;
    }
    return e;
}

CMatExpr HermVar::expr() const {
    CMatExpr e;
    e.constant = CMatrix::Zero(side_, side_);
    const int p = side_ * side_;
    for (int j = 0; j < p; ++j) e.coef[first_ + j] = basis(j);
    return e;
}

const char* to_string(DesignStatus s) {
    switch (s) {
        case DesignStatus::Optimal: return "Optimal";
        case DesignStatus::Infeasible: return "Infeasible";
        case DesignStatus::Unbounded: return "Unbounded";
        case DesignStatus::NumericalTrouble: return "NumericalTrouble";
    }
    return "?";
}

int ConeModel::add_var() { return n_params_++; }

HermVar ConeModel::add_hermitian(int side) {
    const HermVar v(side, n_params_);
    n_params_ += side * side;
    return v;
}

void ConeModel::add_nonneg(const LinExpr& e) { nonneg_.push_back(e); }

void ConeModel::add_soc(const LinExpr& t, const CVecExpr& v) { socs_.push_back({t, v}); }

void ConeModel::add_psd(const CMatExpr& m) { psds_.push_back(m); }

void ConeModel::minimize(const LinExpr& f) { objective_ = f; }

ConicProblem ConeModel::build() const {
    const int p = n_params_;
    int n = static_cast<int>(nonneg_.size());
    for (const auto& [t, v] : socs_) n += 1 + 2 * v.size();
    for (const auto& m : psds_) n += svec_dim(2 * m.side());

    ConicProblem prob;
    prob.c = RVector::Zero(n);
    prob.A = RMatrix::Zero(p, n);
    prob.b = RVector::Zero(p);
    for (const auto& [j, v] : objective_.coef) prob.b(j) = -v;

    // The design constraint "expr(xi) in K" becomes "c - A'y in K" with the
    // constants in c and the negated coefficients as columns of A.
    int off = 0;
    if (!nonneg_.empty()) {
        for (const auto& e : nonneg_) {
            prob.c(off) = e.constant;
            for (const auto& [j, v] : e.coef) prob.A(j, off) = -v;
            ++off;
        }
        prob.cones.push_back(Cone::nonneg(static_cast<int>(nonneg_.size())));
    }
    for (const auto& [t, v] : socs_) {
        const int d = 1 + 2 * v.size();
        prob.c(off) = t.constant;
        for (const auto& [j, s] : t.coef) prob.A(j, off) = -s;
        for (int i = 0; i < v.size(); ++i) {
            prob.c(off + 1 + 2 * i) = v.constant(i).real();
            prob.c(off + 2 + 2 * i) = v.constant(i).imag();
        }
        for (const auto& [j, vc] : v.coef)
            for (int i = 0; i < v.size(); ++i) {
                prob.A(j, off + 1 + 2 * i) = -vc(i).real();
                prob.A(j, off + 2 + 2 * i) = -vc(i).imag();
            }
        prob.cones.push_back(Cone::soc(d));
        off += d;
    }
    for (const auto& m : psds_) {
        const int side2 = 2 * m.side();
        prob.c.segment(off, svec_dim(side2)) = svec(embed_real(symmetrize(m.constant)));
        for (const auto& [j, cm] : m.coef)
            prob.A.row(j).segment(off, svec_dim(side2)) -=
                svec(embed_real(symmetrize(cm))).transpose();
        prob.cones.push_back(Cone::psd(side2));
        off += svec_dim(side2);
    }
    return prob;
}

ModelSolution ConeModel::run(const SolverOptions& opts) const {
    const ConicProblem prob = build();
    ModelSolution out;
    out.raw = solve(prob, opts);
    switch (out.raw.status) {
        case SolveStatus::Optimal:
            out.status = DesignStatus::Optimal;
            break;
        case SolveStatus::DualInfeasible:
            out.status = DesignStatus::Infeasible;
            break;
        case SolveStatus::PrimalInfeasible:
            out.status = DesignStatus::Unbounded;
            break;
        default:
            out.status = DesignStatus::NumericalTrouble;
            break;
    }
    out.xi = out.raw.y;
    if (out.xi.size() != n_params_) out.xi = RVector::Zero(n_params_);
    out.objective = value(objective_, out.xi);
    return out;
}

CMatrix ConeModel::value(const HermVar& w, const RVector& xi) const {
    CMatrix m = CMatrix::Zero(w.side(), w.side());
    const int p = w.side() * w.side();
    for (int j = 0; j < p; ++j) m += xi(w.first_ + j) * w.basis(j);
    return m;
}

double ConeModel::value(const LinExpr& e, const RVector& xi) const {
    double v = e.constant;
    for (const auto& [j, s] : e.coef) v += s * xi(j);
    return v;
}

}  // namespace secbeam
