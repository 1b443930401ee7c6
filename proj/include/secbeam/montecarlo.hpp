// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <string>
#include <vector>

#include "secbeam/ratemax.hpp"

namespace secbeam {

/// Empirical secrecy-outage estimate. `per_eve_outage[k]` is the fraction of
/// draws where the pairwise rate against Eve k fell below the target;
/// `overall_outage` uses the worst Eve per draw (the rate definition used in
/// the secrecy-rate evaluation). Confidence halfwidths are 3-sigma binomial.
struct OutageReport {
    std::vector<double> per_eve_outage;
    std::vector<double> ci_halfwidth;
    double overall_outage = 0.0;
    double overall_ci = 0.0;
    int n_samples = 0;
    std::vector<double> rate_samples;  // achieved secrecy rate per draw
};

/// [log2(1 + |h^H w|^2 / nb) - max_k log2(1 + |g_k^H w|^2 / ne_k)]^+
double secrecy_rate(const CVector& w, const ChannelRealization& real, const SystemConfig& cfg);

OutageReport empirical_outage(const CVector& w, const SystemConfig& cfg,
                              const ScenarioSpec& spec, double r_target, int n,
                              const RngStream& rng);

/// Baseline that trusts the estimates: the nominal QCQP with
/// M_k = (ne_k / (nb 2^R)) h h^H - g_est_k g_est_k^H solved by relaxation;
/// rank-1 extraction falls back to randomized candidates when the optimum is
/// not rank one (no tightness theorem covers this problem).
BeamformerSolution nonrobust_baseline(const SystemConfig& cfg, const ScenarioSpec& spec,
                                      double r, const RngStream& rng = RngStream(0, 0));

struct SweepConfig {
    enum class Axis { PowerDb, EpsB, EpsE, POut };
    Axis axis = Axis::PowerDb;
    std::vector<double> grid;  // strictly increasing
    int n_instances = 100;
    int outage_samples = 1000;
    double rate_tol = 1e-3;
    // base point; the axis overrides its own parameter
    ScenarioVariant variant = ScenarioVariant::StatisticalEcsi;
    int n_tx = 4;
    int n_eves = 1;
    double power_db = 10.0;
    double eps_b = 0.01;
    double eps_e = 0.1;
    double p_out = 0.05;
};

const char* to_string(SweepConfig::Axis a);

struct SweepRow {
    double value = 0.0;
    double mean_rate = 0.0;
    double rate_se = 0.0;  // standard error of mean_rate
    double mean_outage = 0.0;
    int n_fail = 0;  // solver errors / numerical trouble
    int n_ok = 0;
};

struct SweepTable {
    std::string axis_name;
    std::vector<SweepRow> rows;
};

SweepTable run_sweep(const SweepConfig& sweep, const RngStream& rng);

}  // namespace secbeam
