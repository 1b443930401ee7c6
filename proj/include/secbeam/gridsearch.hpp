// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels
//
// Brute-force reference for the Nt = 2 solvers. Every scenario's
// deterministic (or restricted) constraint set, evaluated at W = t u u^H for
// a fixed unit direction u, is affine in t = ||w||^2, so the per-direction
// minimal power is closed-form and a dense sweep over directions
// u = (cos th, sin th e^{i ph}) bounds the global rank-1 optimum.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <vector>

#include "secbeam/hermitian.hpp"

namespace secbeam {

/// `viol(u, t)` returns one violation value per constraint (<= 0 feasible) at
/// beamformer sqrt(t) u; each must be affine in t. Returns the minimal
/// feasible power over the direction grid (coarse sweep plus local
/// refinement around the best direction), or +inf if none is feasible.
inline double grid_min_power(
    const std::function<std::vector<double>(const CVector&, double)>& viol, int n_theta = 90,
    int n_phi = 120, double t_cap = 1e6) {
    const auto power_at = [&](double th, double ph) {
        CVector u(2);
        u << std::cos(th), std::sin(th) * Complex(std::cos(ph), std::sin(ph));
        const std::vector<double> v0 = viol(u, 0.0);
        const std::vector<double> v1 = viol(u, 1.0);
        double lo = 0.0, hi = t_cap;
        for (size_t c = 0; c < v0.size(); ++c) {
            const double slope = v1[c] - v0[c];
            if (slope < -1e-14) {
                lo = std::max(lo, v0[c] / (-slope));
            } else if (slope > 1e-14) {
                if (v0[c] > 0.0) return std::numeric_limits<double>::infinity();
                hi = std::min(hi, -v0[c] / slope);
            } else if (v0[c] > 1e-12) {
                return std::numeric_limits<double>::infinity();
            }
        }
        return lo <= hi + 1e-12 ? lo : std::numeric_limits<double>::infinity();
    };

    double best = std::numeric_limits<double>::infinity();
    double best_th = 0.0, best_ph = 0.0;
    double dth = 0.5 * std::numbers::pi / n_theta;
    double dph = 2.0 * std::numbers::pi / n_phi;
    for (int it = 0; it <= n_theta; ++it) {
        for (int ip = 0; ip < n_phi; ++ip) {
            const double th = it * dth, ph = ip * dph;
            const double p = power_at(th, ph);
            if (p < best) {
                best = p;
                best_th = th;
                best_ph = ph;
            }
        }
    }
    if (!std::isfinite(best)) return best;

    // zoom: re-grid a shrinking window around the incumbent direction
    for (int pass = 0; pass < 4; ++pass) {
        const double th0 = best_th, ph0 = best_ph;
        for (int it = -10; it <= 10; ++it) {
            for (int ip = -10; ip <= 10; ++ip) {
                const double th =
                    std::clamp(th0 + it * dth / 10.0, 0.0, 0.5 * std::numbers::pi);
                const double ph = ph0 + ip * dph / 10.0;
                const double p = power_at(th, ph);
                if (p < best) {
                    best = p;
                    best_th = th;
                    best_ph = ph;
                }
            }
        }
        dth /= 10.0;
        dph /= 10.0;
    }
    return best;
}

}  // namespace secbeam
