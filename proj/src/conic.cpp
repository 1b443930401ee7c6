// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels
//
// Dense primal-dual path-following solver with Nesterov-Todd scaling and a
// Mehrotra predictor-corrector, in the spirit of the conelp algorithm of
// CVXOPT. Problems here are small (a few hundred variables), so everything
// is dense and the search direction comes from normal equations
// A (W'W) A' dy = rhs factored with LDLT.

#include "secbeam/conic.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "json.hpp"

namespace secbeam {

namespace {
constexpr double kSqrt2 = 1.4142135623730951;
}

int svec_dim(int side) { return side * (side + 1) / 2; }

RVector svec(const RMatrix& m) {
    const int n = static_cast<int>(m.rows());
    RVector v(svec_dim(n));
    int idx = 0;
    for (int j = 0; j < n; ++j) {
        v(idx++) = m(j, j);
        for (int i = j + 1; i < n; ++i) v(idx++) = kSqrt2 * m(i, j);
    }
    return v;
}

RMatrix smat(const RVector& v, int side) {
    RMatrix m(side, side);
    int idx = 0;
    for (int j = 0; j < side; ++j) {
        m(j, j) = v(idx++);
        for (int i = j + 1; i < side; ++i) {
            m(i, j) = v(idx) / kSqrt2;
            m(j, i) = m(i, j);
            ++idx;
        }
    }
    return m;
}

int ConicProblem::dim() const {
    int n = 0;
    for (const auto& k : cones) n += k.size();
    return n;
}

void ConicProblem::validate() const {
    const int n = dim();
    if (c.size() != n) throw DimensionMismatch("objective length does not match cones");
    if (A.size() > 0 || b.size() > 0) {
        if (A.cols() != n) throw DimensionMismatch("A column count does not match cones");
        if (A.rows() != b.size()) throw DimensionMismatch("A row count does not match b");
    }
    for (const auto& k : cones)
        if (k.dim < 1) throw DimensionMismatch("cone dimensions must be >= 1");
}

std::string ConicProblem::dump_json() const {
    nlohmann::json j;
    j["c"] = std::vector<double>(c.data(), c.data() + c.size());
    j["b"] = std::vector<double>(b.data(), b.data() + b.size());
    j["A"] = nlohmann::json::array();
    for (Eigen::Index i = 0; i < A.rows(); ++i) {
        std::vector<double> row(A.cols());
        for (Eigen::Index k = 0; k < A.cols(); ++k) row[k] = A(i, k);
        j["A"].push_back(row);
    }
    j["cones"] = nlohmann::json::array();
    for (const auto& k : cones) {
        const char* kind = "free";
        switch (k.kind) {
            case Cone::Kind::Free: kind = "free"; break;
            case Cone::Kind::NonNeg: kind = "nonneg"; break;
            case Cone::Kind::SecondOrder: kind = "soc"; break;
            case Cone::Kind::Psd: kind = "psd"; break;
        }
        j["cones"].push_back({{"kind", kind}, {"dim", k.dim}});
    }
    return j.dump();
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Optimal: return "Optimal";
        case SolveStatus::PrimalInfeasible: return "PrimalInfeasible";
        case SolveStatus::DualInfeasible: return "DualInfeasible";
        case SolveStatus::MaxIter: return "MaxIter";
        case SolveStatus::NumericalTrouble: return "NumericalTrouble";
    }
    return "?";
}

namespace {

struct Block {
    Cone cone;
    int offset = 0;  // into the composite vector
};

std::vector<Block> make_blocks(const std::vector<Cone>& cones) {
    std::vector<Block> blocks;
    int off = 0;
    for (const auto& k : cones) {
        blocks.push_back({k, off});
        off += k.size();
    }
    return blocks;
}

// Barrier degree: nonneg entries count 1 each, each SOC counts 1, each PSD
// counts its side.
double barrier_degree(const std::vector<Block>& blocks) {
    double nu = 0;
    for (const auto& blk : blocks) {
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg: nu += blk.cone.dim; break;
            case Cone::Kind::SecondOrder: nu += 1; break;
            case Cone::Kind::Psd: nu += blk.cone.dim; break;
            case Cone::Kind::Free: break;
        }
    }
    return nu;
}

RVector identity_element(const std::vector<Block>& blocks, int n) {
    RVector e = RVector::Zero(n);
    for (const auto& blk : blocks) {
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg:
                e.segment(blk.offset, blk.cone.dim).setOnes();
                break;
            case Cone::Kind::SecondOrder:
                e(blk.offset) = 1.0;
                break;
            case Cone::Kind::Psd:
                e.segment(blk.offset, blk.cone.size()) =
                    svec(RMatrix::Identity(blk.cone.dim, blk.cone.dim));
                break;
            case Cone::Kind::Free:
                break;
        }
    }
    return e;
}

// Signed distance to the cone boundary: the smallest "eigenvalue" of the
// block (min entry / x0 - ||x1|| / lambda_min). Positive means interior.
double min_eig(const Block& blk, const RVector& v) {
    switch (blk.cone.kind) {
        case Cone::Kind::NonNeg:
            return v.segment(blk.offset, blk.cone.dim).minCoeff();
        case Cone::Kind::SecondOrder: {
            const auto seg = v.segment(blk.offset, blk.cone.dim);
            return seg(0) - seg.tail(seg.size() - 1).norm();
        }
        case Cone::Kind::Psd: {
            const RMatrix m = smat(v.segment(blk.offset, blk.cone.size()), blk.cone.dim);
            Eigen::SelfAdjointEigenSolver<RMatrix> es(m, Eigen::EigenvaluesOnly);
            return es.eigenvalues().minCoeff();
        }
        case Cone::Kind::Free:
            return std::numeric_limits<double>::infinity();
    }
    return 0.0;
}

double min_eig_all(const std::vector<Block>& blocks, const RVector& v) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& blk : blocks) m = std::min(m, min_eig(blk, v));
    return m;
}

// Nesterov-Todd scaling state. For each block W satisfies
// W z = W^{-T} x = lambda.
struct Scaling {
    // NonNeg: d = sqrt(x/z), applied elementwise.
    std::vector<RVector> d;
    // SOC: W = beta * (2 v v' - J) with v'Jv = 1, J = diag(1, -I).
    std::vector<double> beta;
    std::vector<RVector> v;
    // PSD: R with R' Z R = R^{-1} X R^{-T} = diag(lambda).
    std::vector<RMatrix> R, Rinv;
    RVector lambda;
    bool ok = true;
};

Scaling compute_scaling(const std::vector<Block>& blocks, const RVector& x, const RVector& z,
                        int n) {
    Scaling w;
    w.d.resize(blocks.size());
    w.beta.resize(blocks.size(), 0.0);
    w.v.resize(blocks.size());
    w.R.resize(blocks.size());
    w.Rinv.resize(blocks.size());
    w.lambda = RVector::Zero(n);
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const Block& blk = blocks[bi];
        const int off = blk.offset;
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg: {
                const int m = blk.cone.dim;
                w.d[bi] = (x.segment(off, m).array() / z.segment(off, m).array()).sqrt();
                w.lambda.segment(off, m) =
                    (x.segment(off, m).array() * z.segment(off, m).array()).sqrt();
                break;
            }
            case Cone::Kind::SecondOrder: {
                const int m = blk.cone.dim;
                const RVector xs = x.segment(off, m);
                const RVector zs = z.segment(off, m);
                const double a2 = xs(0) * xs(0) - xs.tail(m - 1).squaredNorm();
                const double b2 = zs(0) * zs(0) - zs.tail(m - 1).squaredNorm();
                if (!(a2 > 0.0) || !(b2 > 0.0)) {
                    w.ok = false;
                    return w;
                }
                const double aa = std::sqrt(a2), bb = std::sqrt(b2);
                w.beta[bi] = std::sqrt(aa / bb);
                const double cc = std::sqrt((xs.dot(zs) / (aa * bb) + 1.0) / 2.0);
                RVector vv(m);
                vv(0) = (xs(0) / aa + zs(0) / bb) / (2.0 * cc);
                vv.tail(m - 1) =
                    (xs.tail(m - 1) / aa - zs.tail(m - 1) / bb) / (2.0 * cc);
                vv(0) += 1.0;
                vv /= std::sqrt(2.0 * vv(0));
                w.v[bi] = vv;
                const double dd = 2.0 * cc + xs(0) / aa + zs(0) / bb;
                RVector lam(m);
                lam(0) = cc;
                lam.tail(m - 1) = ((cc + zs(0) / bb) / dd) * (xs.tail(m - 1) / aa) +
                                  ((cc + xs(0) / aa) / dd) * (zs.tail(m - 1) / bb);
                w.lambda.segment(off, m) = std::sqrt(aa * bb) * lam;
                break;
            }
            case Cone::Kind::Psd: {
                const int s = blk.cone.dim;
                const RMatrix X = smat(x.segment(off, blk.cone.size()), s);
                const RMatrix Z = smat(z.segment(off, blk.cone.size()), s);
                Eigen::LLT<RMatrix> lx(X), lz(Z);
                if (lx.info() != Eigen::Success || lz.info() != Eigen::Success) {
                    w.ok = false;
                    return w;
                }
                const RMatrix Lx = lx.matrixL();
                const RMatrix Lz = lz.matrixL();
                Eigen::JacobiSVD<RMatrix> svd(Lz.transpose() * Lx,
                                              Eigen::ComputeFullU | Eigen::ComputeFullV);
                const RVector sig = svd.singularValues();
                if (sig.minCoeff() <= 0.0) {
                    w.ok = false;
                    return w;
                }
                const RVector si = sig.array().sqrt().inverse();
                w.R[bi] = Lx * svd.matrixV() * si.asDiagonal();
                w.Rinv[bi] = si.asDiagonal() * svd.matrixU().transpose() * Lz.transpose();
                w.lambda.segment(off, blk.cone.size()) =
                    svec(RMatrix(sig.asDiagonal()));
                break;
            }
            case Cone::Kind::Free:
                w.ok = false;  // presolve must have removed these
                return w;
        }
    }
    return w;
}

enum class ScaleOp { W, Wt, WinvT };

// Apply the NT scaling (or its transpose / inverse-transpose) blockwise.
RVector apply_scaling(const Scaling& w, const std::vector<Block>& blocks, const RVector& u,
                      ScaleOp op) {
    RVector out(u.size());
    for (size_t bi = 0; bi < blocks.size(); ++bi) {
        const Block& blk = blocks[bi];
        const int off = blk.offset;
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg: {
                const int m = blk.cone.dim;
                if (op == ScaleOp::WinvT)
                    out.segment(off, m) = u.segment(off, m).array() / w.d[bi].array();
                else
                    out.segment(off, m) = u.segment(off, m).array() * w.d[bi].array();
                break;
            }
            case Cone::Kind::SecondOrder: {
                const int m = blk.cone.dim;
                const RVector us = u.segment(off, m);
                if (op == ScaleOp::WinvT) {
                    // W^{-1} = (1/beta) (2 (Jv)(Jv)' - J); W symmetric.
                    RVector jv = w.v[bi];
                    jv.tail(m - 1) *= -1.0;
                    RVector r = 2.0 * jv * jv.dot(us);
                    r(0) -= us(0);
                    r.tail(m - 1) += us.tail(m - 1);
                    out.segment(off, m) = r / w.beta[bi];
                } else {
                    RVector r = 2.0 * w.v[bi] * w.v[bi].dot(us);
                    r(0) -= us(0);
                    r.tail(m - 1) += us.tail(m - 1);
                    out.segment(off, m) = w.beta[bi] * r;
                }
                break;
            }
            case Cone::Kind::Psd: {
                const int s = blk.cone.dim;
                const RMatrix U = smat(u.segment(off, blk.cone.size()), s);
                RMatrix res;
                if (op == ScaleOp::W)
                    res = w.R[bi].transpose() * U * w.R[bi];
                else if (op == ScaleOp::Wt)
                    res = w.R[bi] * U * w.R[bi].transpose();
                else
                    res = w.Rinv[bi] * U * w.Rinv[bi].transpose();
                out.segment(off, blk.cone.size()) = svec(0.5 * (res + res.transpose().eval()));
                break;
            }
            case Cone::Kind::Free:
                out.segment(off, blk.cone.dim) = u.segment(off, blk.cone.dim);
                break;
        }
    }
    return out;
}

// Jordan product u o v.
RVector jordan_product(const std::vector<Block>& blocks, const RVector& u, const RVector& v) {
    RVector out(u.size());
    for (const auto& blk : blocks) {
        const int off = blk.offset;
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg:
                out.segment(off, blk.cone.dim) =
                    u.segment(off, blk.cone.dim).cwiseProduct(v.segment(off, blk.cone.dim));
                break;
            case Cone::Kind::SecondOrder: {
                const int m = blk.cone.dim;
                const RVector us = u.segment(off, m), vs = v.segment(off, m);
                out(off) = us.dot(vs);
                out.segment(off + 1, m - 1) =
                    us(0) * vs.tail(m - 1) + vs(0) * us.tail(m - 1);
                break;
            }
            case Cone::Kind::Psd: {
                const int s = blk.cone.dim;
                const RMatrix U = smat(u.segment(off, blk.cone.size()), s);
                const RMatrix V = smat(v.segment(off, blk.cone.size()), s);
                out.segment(off, blk.cone.size()) = svec(0.5 * (U * V + V * U));
                break;
            }
            case Cone::Kind::Free:
                out.segment(off, blk.cone.dim).setZero();
                break;
        }
    }
    return out;
}

// Solve lambda o g = d for g (lambda interior).
RVector jordan_solve(const std::vector<Block>& blocks, const RVector& lambda, const RVector& d) {
    RVector g(d.size());
    for (const auto& blk : blocks) {
        const int off = blk.offset;
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg:
                g.segment(off, blk.cone.dim) =
                    d.segment(off, blk.cone.dim).array() / lambda.segment(off, blk.cone.dim).array();
                break;
            case Cone::Kind::SecondOrder: {
                const int m = blk.cone.dim;
                const RVector ls = lambda.segment(off, m), ds = d.segment(off, m);
                const double det = ls(0) * ls(0) - ls.tail(m - 1).squaredNorm();
                const double g0 = (ls(0) * ds(0) - ls.tail(m - 1).dot(ds.tail(m - 1))) / det;
                g(off) = g0;
                g.segment(off + 1, m - 1) = (ds.tail(m - 1) - g0 * ls.tail(m - 1)) / ls(0);
                break;
            }
            case Cone::Kind::Psd: {
                const int s = blk.cone.dim;
                // lambda is diagonal by construction of the NT scaling.
                RVector lam(s);
                {
                    const RMatrix L = smat(lambda.segment(off, blk.cone.size()), s);
                    lam = L.diagonal();
                }
                const RMatrix D = smat(d.segment(off, blk.cone.size()), s);
                RMatrix G(s, s);
                for (int i = 0; i < s; ++i)
                    for (int j = 0; j < s; ++j) G(i, j) = 2.0 * D(i, j) / (lam(i) + lam(j));
                g.segment(off, blk.cone.size()) = svec(G);
                break;
            }
            case Cone::Kind::Free:
                g.segment(off, blk.cone.dim).setZero();
                break;
        }
    }
    return g;
}

// Largest t such that v + t*dv stays in the cone (can be +inf).
double max_step(const std::vector<Block>& blocks, const RVector& v, const RVector& dv) {
    double tmax = std::numeric_limits<double>::infinity();
    for (const auto& blk : blocks) {
        const int off = blk.offset;
        switch (blk.cone.kind) {
            case Cone::Kind::NonNeg: {
                for (int i = 0; i < blk.cone.dim; ++i) {
                    if (dv(off + i) < 0.0) tmax = std::min(tmax, -v(off + i) / dv(off + i));
                }
                break;
            }
            case Cone::Kind::SecondOrder: {
                const int m = blk.cone.dim;
                const RVector vs = v.segment(off, m), ds = dv.segment(off, m);
                // (v0 + t d0)^2 - ||v1 + t d1||^2 = a t^2 + b t + c, c > 0.
                const double a = ds(0) * ds(0) - ds.tail(m - 1).squaredNorm();
                const double b = 2.0 * (vs(0) * ds(0) - vs.tail(m - 1).dot(ds.tail(m - 1)));
                const double cq = vs(0) * vs(0) - vs.tail(m - 1).squaredNorm();
                double root = std::numeric_limits<double>::infinity();
                const double disc = b * b - 4.0 * a * cq;
                if (std::abs(a) < 1e-300) {
                    if (b < 0.0) root = -cq / b;
                } else if (disc >= 0.0) {
                    const double sq = std::sqrt(disc);
                    const double r1 = (-b - sq) / (2.0 * a);
                    const double r2 = (-b + sq) / (2.0 * a);
                    for (double r : {std::min(r1, r2), std::max(r1, r2)})
                        if (r > 0.0) {
                            root = r;
                            break;
                        }
                }
                tmax = std::min(tmax, root);
                break;
            }
            case Cone::Kind::Psd: {
                const int s = blk.cone.dim;
                const RMatrix V = smat(v.segment(off, blk.cone.size()), s);
                const RMatrix D = smat(dv.segment(off, blk.cone.size()), s);
                Eigen::LLT<RMatrix> llt(V);
                if (llt.info() != Eigen::Success) {
                    tmax = 0.0;
                    break;
                }
                const RMatrix L = llt.matrixL();
                const RMatrix Minv =
                    L.triangularView<Eigen::Lower>().solve(RMatrix(
                        L.triangularView<Eigen::Lower>().solve(D).transpose())).transpose();
                Eigen::SelfAdjointEigenSolver<RMatrix> es(0.5 * (Minv + Minv.transpose()),
                                                          Eigen::EigenvaluesOnly);
                const double lmin = es.eigenvalues().minCoeff();
                if (lmin < 0.0) tmax = std::min(tmax, -1.0 / lmin);
                break;
            }
            case Cone::Kind::Free:
                break;
        }
    }
    return tmax;
}

struct IpmWork {
    std::vector<Block> blocks;
    RMatrix A;
    RVector b, c;
    int n = 0, m = 0;
    double nu = 0.0;
};

// One interior-point run on a presolved problem (no Free cones, A full row
// rank). Fills x, y, z and status.
ConicSolution run_ipm(const IpmWork& w, const SolverOptions& opts) {
    ConicSolution sol;
    const int n = w.n, m = w.m;
    const RVector e = identity_element(w.blocks, n);

    // Initialization: least-norm primal point and least-squares dual point,
    // shifted into the interior.
    RVector x, y, z;
    Eigen::LDLT<RMatrix> aat;
    if (m > 0) {
        aat.compute(w.A * w.A.transpose());
        x = w.A.transpose() * aat.solve(w.b);
        y = aat.solve(w.A * w.c);
        z = w.c - w.A.transpose() * y;
    } else {
        x = RVector::Zero(n);
        y = RVector(0);
        z = w.c;
    }
    {
        const double sx = std::max(0.0, -min_eig_all(w.blocks, x));
        x += (1.0 + sx) * e;
        const double sz = std::max(0.0, -min_eig_all(w.blocks, z));
        z += (1.0 + sz) * e;
    }

    const double bnorm = w.b.size() ? w.b.norm() : 0.0;
    const double cnorm = w.c.norm();
    double prev_mu = std::numeric_limits<double>::infinity();
    int consecutive_small_steps = 0;

    for (int iter = 0; iter <= opts.max_iter; ++iter) {
        const RVector rp = (m > 0) ? RVector(w.A * x - w.b) : RVector(0);
        const RVector rd = (m > 0) ? RVector(w.A.transpose() * y + z - w.c) : RVector(z - w.c);
        const double gap = x.dot(z);
        const double pobj = w.c.dot(x);
        const double dobj = (m > 0) ? w.b.dot(y) : 0.0;
        const double pres = (m > 0 ? rp.norm() : 0.0) / (1.0 + bnorm);
        const double dres = rd.norm() / (1.0 + cnorm);
        const double relgap = gap / std::max(1.0, std::abs(pobj));

        if (opts.verbose) {
            std::ostringstream os;
            os << "iter " << iter << " pres " << pres << " dres " << dres << " gap " << gap
               << " pobj " << pobj << "\n";
            std::fputs(os.str().c_str(), stderr);
        }

        sol.x = x;
        sol.y = y;
        sol.z = z;
        sol.gap = gap;
        sol.primal_obj = pobj;
        sol.dual_obj = dobj;
        sol.iterations = iter;

        if (pres <= opts.feas_tol && dres <= opts.feas_tol && relgap <= opts.gap_tol) {
            sol.status = SolveStatus::Optimal;
            return sol;
        }

        // Infeasibility certificates (Farkas directions carried by the
        // diverging iterates).
        if (m > 0) {
            const double by = w.b.dot(y);
            if (by > 0.0) {
                const double q = (w.A.transpose() * y + z).norm() * std::max(1.0, bnorm) / by;
                if (q <= 1e-8) {
                    sol.y = y / by;
                    sol.z = z / by;
                    sol.status = SolveStatus::PrimalInfeasible;
                    return sol;
                }
            }
        }
        {
            const double cx = w.c.dot(x);
            if (cx < 0.0) {
                const double q =
                    (m > 0 ? (w.A * x).norm() : 0.0) * std::max(1.0, cnorm) / (-cx);
                if (q <= 1e-8) {
                    sol.x = x / (-cx);
                    sol.status = SolveStatus::DualInfeasible;
                    return sol;
                }
            }
        }

        if (iter == opts.max_iter) {
            sol.status = SolveStatus::MaxIter;
            return sol;
        }

        const double mu = gap / w.nu;
        const Scaling sc = compute_scaling(w.blocks, x, z, n);
        if (!sc.ok || !std::isfinite(mu)) {
            sol.status = SolveStatus::NumericalTrouble;
            return sol;
        }

        // Scaled rows G(i,:) = (W a_i)' so that G G' = A W'W A'.
        RMatrix G(m, n);
        for (int i = 0; i < m; ++i)
            G.row(i) = apply_scaling(sc, w.blocks, w.A.row(i).transpose(), ScaleOp::W).transpose();
        Eigen::LDLT<RMatrix> kkt;
        if (m > 0) {
            kkt.compute(G * G.transpose());
            if (kkt.info() != Eigen::Success) {
                sol.status = SolveStatus::NumericalTrouble;
                return sol;
            }
        }

        const RVector w_rd = apply_scaling(sc, w.blocks, rd, ScaleOp::W);

        auto newton = [&](const RVector& ds) {
            // Solve  A dx = -rp,  A'dy + dz = -rd,
            //        lambda o (W^{-T} dx + W dz) = ds.
            const RVector g = jordan_solve(w.blocks, sc.lambda, ds);
            RVector dy(0);
            RVector dz;
            if (m > 0) {
                RVector rhs = -rp - G * g - G * w_rd;
                dy = kkt.solve(rhs);
                // one step of iterative refinement on the normal equations
                rhs -= (G * (G.transpose() * dy));
                dy += kkt.solve(rhs);
                dz = -rd - w.A.transpose() * dy;
            } else {
                dz = -rd;
            }
            const RVector wdz = apply_scaling(sc, w.blocks, dz, ScaleOp::W);
            const RVector dx = apply_scaling(sc, w.blocks, g - wdz, ScaleOp::Wt);
            return std::tuple<RVector, RVector, RVector>(dx, dy, dz);
        };

        // Predictor.
        const RVector lam_sq = jordan_product(w.blocks, sc.lambda, sc.lambda);
        auto [dxa, dya, dza] = newton(-lam_sq);
        if (!dxa.allFinite() || !dza.allFinite()) {
            sol.status = SolveStatus::NumericalTrouble;
            return sol;
        }
        const RVector sdxa = apply_scaling(sc, w.blocks, dxa, ScaleOp::WinvT);
        const RVector sdza = apply_scaling(sc, w.blocks, dza, ScaleOp::W);
        const double tx = max_step(w.blocks, sc.lambda, sdxa);
        const double tz = max_step(w.blocks, sc.lambda, sdza);
        const double alpha_aff = std::min(1.0, std::min(tx, tz));
        const double gap_aff = (x + alpha_aff * dxa).dot(z + alpha_aff * dza);
        double sigma = std::pow(std::max(0.0, gap_aff / gap), 3.0);
        sigma = std::clamp(sigma, 0.0, 1.0);

        // Corrector.
        const RVector ds = sigma * mu * e - lam_sq - jordan_product(w.blocks, sdxa, sdza);
        auto [dx, dy, dz] = newton(ds);
        if (!dx.allFinite() || !dz.allFinite()) {
            sol.status = SolveStatus::NumericalTrouble;
            return sol;
        }
        const RVector sdx = apply_scaling(sc, w.blocks, dx, ScaleOp::WinvT);
        const RVector sdz = apply_scaling(sc, w.blocks, dz, ScaleOp::W);
        const double step =
            std::min(1.0, 0.99 * std::min(max_step(w.blocks, sc.lambda, sdx),
                                          max_step(w.blocks, sc.lambda, sdz)));
        if (!(step > 1e-10)) {
            ++consecutive_small_steps;
            if (consecutive_small_steps >= 3) {
                sol.status = SolveStatus::NumericalTrouble;
                return sol;
            }
        } else {
            consecutive_small_steps = 0;
        }

        x += step * dx;
        if (m > 0) y += step * dy;
        z += step * dz;

        if (mu > 0.9999 * prev_mu && mu < 1e-13) {
            // complementarity exhausted without meeting feasibility targets
            sol.status = SolveStatus::NumericalTrouble;
            return sol;
        }
        prev_mu = mu;
    }
    sol.status = SolveStatus::MaxIter;
    return sol;
}

}  // namespace

ConicSolution solve(const ConicProblem& p, const SolverOptions& opts) {
    p.validate();

    // Presolve 1: split Free segments into differences of NonNeg pairs.
    // The split keeps segment positions, appending the negative parts at the
    // end so indices into the original layout stay valid.
    IpmWork w;
    w.c = p.c;
    w.b = p.b;
    w.A = p.A;
    const int n0 = p.dim();
    if (w.A.size() == 0) w.A = RMatrix::Zero(p.b.size(), n0);
    std::vector<Cone> cones = p.cones;
    struct FreeSplit {
        int orig_offset, extra_offset, dim;
    };
    std::vector<FreeSplit> splits;
    {
        int off = 0;
        std::vector<std::pair<int, int>> free_segs;  // offset, dim
        for (auto& k : cones) {
            if (k.kind == Cone::Kind::Free) free_segs.push_back({off, k.dim});
            off += k.size();
        }
        if (!free_segs.empty()) {
            int extra = 0;
            for (auto& fs : free_segs) extra += fs.second;
            RVector c2(n0 + extra);
            c2.head(n0) = w.c;
            RMatrix a2(w.A.rows(), n0 + extra);
            a2.leftCols(n0) = w.A;
            int pos = n0;
            for (auto& fs : free_segs) {
                c2.segment(pos, fs.second) = -w.c.segment(fs.first, fs.second);
                a2.middleCols(pos, fs.second) = -w.A.middleCols(fs.first, fs.second);
                splits.push_back({fs.first, pos, fs.second});
                pos += fs.second;
            }
            w.c = c2;
            w.A = a2;
            for (auto& k : cones)
                if (k.kind == Cone::Kind::Free) k.kind = Cone::Kind::NonNeg;
            for (auto& fs : free_segs) cones.push_back(Cone::nonneg(fs.second));
        }
    }
    w.blocks = make_blocks(cones);
    w.n = static_cast<int>(w.c.size());
    w.m = static_cast<int>(w.b.size());
    w.nu = barrier_degree(w.blocks);

    // Presolve 2: drop linearly dependent equality rows (checking that the
    // dropped rows are consistent with the kept ones).
    std::vector<int> kept_rows;
    RMatrix a_full = w.A;
    RVector b_full = w.b;
    if (w.m > 0) {
        Eigen::ColPivHouseholderQR<RMatrix> qr(w.A.transpose());
        qr.setThreshold(1e-10);
        const int rank = static_cast<int>(qr.rank());
        if (rank < w.m) {
            // consistency of the full affine system
            Eigen::CompleteOrthogonalDecomposition<RMatrix> cod(w.A);
            const RVector xls = cod.solve(w.b);
            if ((w.A * xls - w.b).norm() > 1e-8 * (1.0 + w.b.norm())) {
                ConicSolution sol;
                sol.status = SolveStatus::PrimalInfeasible;
                sol.x = RVector::Zero(n0);
                sol.y = RVector::Zero(w.m);
                sol.z = RVector::Zero(n0);
                return sol;
            }
            const auto perm = qr.colsPermutation().indices();
            kept_rows.assign(perm.data(), perm.data() + rank);
            std::sort(kept_rows.begin(), kept_rows.end());
            RMatrix ar(rank, w.n);
            RVector br(rank);
            for (int i = 0; i < rank; ++i) {
                ar.row(i) = w.A.row(kept_rows[i]);
                br(i) = w.b(kept_rows[i]);
            }
            w.A = ar;
            w.b = br;
            w.m = rank;
        }
    }

    ConicSolution sol = run_ipm(w, opts);

    // Undo the row reduction.
    if (!kept_rows.empty()) {
        RVector y_full = RVector::Zero(b_full.size());
        for (size_t i = 0; i < kept_rows.size(); ++i) y_full(kept_rows[i]) = sol.y(i);
        sol.y = y_full;
    }
    // Undo the Free split.
    if (!splits.empty()) {
        for (const auto& fs : splits)
            sol.x.segment(fs.orig_offset, fs.dim) -= sol.x.segment(fs.extra_offset, fs.dim);
        sol.x.conservativeResize(n0);
        sol.z.conservativeResize(n0);
        // Dual slack on a free segment is exactly the dual equality residual.
        RVector zc = p.c - (p.A.size() ? RVector(p.A.transpose() * sol.y) : RVector::Zero(n0));
        int off = 0;
        for (const auto& k : p.cones) {
            if (k.kind == Cone::Kind::Free)
                sol.z.segment(off, k.dim) = zc.segment(off, k.dim);
            off += k.size();
        }
        sol.gap = sol.x.dot(sol.z);
        sol.primal_obj = p.c.dot(sol.x);
    }
    return sol;
}

KktReport kkt_residuals(const ConicProblem& p, const ConicSolution& s) {
    p.validate();
    KktReport r;
    const int n = p.dim();
    const RVector ax = p.A.size() ? RVector(p.A * s.x) : RVector(0);
    r.primal_residual = p.b.size() ? (ax - p.b).norm() : 0.0;
    r.rel_primal_residual = r.primal_residual / (1.0 + (p.b.size() ? p.b.norm() : 0.0));
    const RVector dres =
        (p.A.size() ? RVector(p.A.transpose() * s.y + s.z - p.c) : RVector(s.z - p.c));
    r.dual_residual = dres.norm();
    r.rel_dual_residual = r.dual_residual / (1.0 + p.c.norm());

    const auto blocks = make_blocks(p.cones);
    double comp = 0.0;
    for (const auto& blk : blocks) {
        if (blk.cone.kind == Cone::Kind::Free) {
            r.cone_distance_x.push_back(0.0);
            r.cone_distance_z.push_back(0.0);
            continue;
        }
        comp += s.x.segment(blk.offset, blk.cone.size())
                    .dot(s.z.segment(blk.offset, blk.cone.size()));
        r.cone_distance_x.push_back(std::max(0.0, -min_eig(blk, s.x)));
        r.cone_distance_z.push_back(std::max(0.0, -min_eig(blk, s.z)));
    }
    r.complementarity = comp;
    (void)n;
    return r;
}

}  // namespace secbeam
