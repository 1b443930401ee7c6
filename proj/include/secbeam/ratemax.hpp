// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include "secbeam/scenario1.hpp"

namespace secbeam {

struct BisectionResult {
    double rate_opt = 0.0;  // bits/s/Hz
    BeamformerSolution solution;
    int iterations = 0;
    double bracket_width = 0.0;
};

/// Over-estimate of any achievable secrecy rate at the power budget:
/// log2(1 + P ||h||^2 / nb). For the imperfect-LCSI variant the unknown true
/// channel norm is covered by a 3-sigma inflation of the estimate's norm; a
/// too-small bracket would only cost iterations, never correctness, since the
/// upper end shrinks on infeasibility.
double rate_upper_bound(const SystemConfig& cfg, const ScenarioSpec& spec);

/// Bisection over the rate target, solving the scenario-matched power
/// minimization at each probe. A probe counts as attainable when the solver
/// returns Optimal with power within the budget; infeasible, over-budget and
/// failed-recovery probes all move the upper end. Returns the solution of the
/// last attainable probe, or rate 0 with a zero beamformer if none exists.
BisectionResult max_secrecy_rate(const SystemConfig& cfg, const ScenarioSpec& spec,
                                 double rate_tol = 1e-3,
                                 const RngStream& rng = RngStream(0, 0));

}  // namespace secbeam
