// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace secbeam {

// End-to-end verification battery. Each check cross-validates one pillar of
// the design pipeline (closed forms vs. relaxations, tail bounds vs. Monte
// Carlo, solvers vs. brute-force search, solver KKT health) and reports a
// single pass/fail verdict. The full battery backs the acceptance test; the
// scaled-down battery backs the CLI selftest.

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;    // short human-readable evidence
    double seconds = 0.0;  // wall time of this check
};

struct CheckScale {
    int closed_form_instances = 100;    // per-antenna-count split internally
    int rank_instances = 100;
    int exactness_tuples = 20;
    int exactness_draws = 100000;
    int exactness_designs = 20;
    int tail_pairs = 20;
    int tail_draws = 100000;
    int projection_instances = 50;
    int projection_directions = 100;
    int conservative_instances = 20;
    int conservative_draws = 100000;
    int cdf_realizations = 200;
    int cdf_draws = 10000;
    int compare_realizations = 100;
    int sweep_instances = 50;
    int oracle_instances = 10;
    int health_sdps = 20;
};

CheckScale full_scale();
/// Reduced counts sized to finish in well under two minutes on one core.
CheckScale fast_scale();

/// Runs every check; writes one "[PASS]/[FAIL] name" line per check to `log`
/// when given. Deterministic for a fixed (scale, seed).
std::vector<CheckResult> run_checks(const CheckScale& scale, std::uint64_t seed,
                                    std::ostream* log = nullptr);

}  // namespace secbeam
