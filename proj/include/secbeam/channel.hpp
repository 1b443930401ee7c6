// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#pragma once

#include <vector>

#include "secbeam/hermitian.hpp"
#include "secbeam/rng.hpp"

namespace secbeam {

/// System-level parameters. Noise variances and the power budget are linear
/// (watts); dB conversion happens once, at the CLI boundary.
struct SystemConfig {
    int n_tx = 1;                      // transmit antennas
    double noise_bob = 1.0;            // receiver noise variance at Bob
    std::vector<double> noise_eves;    // per-Eve noise variances
    double power_budget = 1.0;         // transmit power limit, linear
    std::vector<double> outage_probs;  // per-Eve outage budgets in (0, 1]

    int n_eves() const { return static_cast<int>(noise_eves.size()); }
};

enum class ScenarioVariant {
    StatisticalEcsi,  // exact h, g_k ~ CN(0, G_k)
    ImperfectEcsi,    // exact h, g_k = g_est + error
    ImperfectBoth,    // h and g_k both estimated with Gaussian error
};

/// Channel knowledge for one of the three uncertainty scenarios.
/// `h` is the exact channel for the first two variants and the estimate for
/// the third. `eve_covs` holds G_k for StatisticalEcsi and the error
/// covariances otherwise. `bob_cov` is used by ImperfectBoth only.
struct ScenarioSpec {
    ScenarioVariant variant = ScenarioVariant::StatisticalEcsi;
    CVector h;
    std::vector<CVector> g_est;     // absent for StatisticalEcsi
    std::vector<CMatrix> eve_covs;  // one per Eve
    CMatrix bob_cov;                // ImperfectBoth only
};

/// One Monte Carlo draw of the true channels.
struct ChannelRealization {
    CVector h;
    std::vector<CVector> g;
};

/// Checks dimensions, probabilities, and covariance PSD-ness; returns the
/// spec with covariances symmetrized. Throws DimensionMismatch, NotPsd or
/// BadProbability.
ScenarioSpec validate(const SystemConfig& cfg, ScenarioSpec spec);

/// Draw from CN(mean, cov) as mean + cov^{1/2} z with z ~ CN(0, I).
CVector sample_cn(const CVector& mean, const CMatrix& cov, RngStream& rng);

/// Draw the true channels for one realization of the given scenario.
ChannelRealization realize(const ScenarioSpec& spec, RngStream& rng);

/// Precomputes the covariance square roots of a validated spec so bulk Monte
/// Carlo draws avoid one eigendecomposition per sample. draw() is const and
/// takes an explicit stream, so parallel use is safe.
class SpecSampler {
  public:
    explicit SpecSampler(const ScenarioSpec& spec);
    ChannelRealization draw(RngStream& rng) const;
    const ScenarioSpec& spec() const { return spec_; }

  private:
    ScenarioSpec spec_;
    std::vector<CMatrix> eve_roots_;
    CMatrix bob_root_;
};

/// Random experiment instance following the simulation recipe: Rayleigh
/// channels/estimates CN(0, I) and isotropic error covariances eps*I.
/// For StatisticalEcsi, eve_covs = eps_e * I and eps_b is ignored.
ScenarioSpec random_spec(ScenarioVariant variant, int n_tx, int n_eves, double eps_b,
                         double eps_e, RngStream& rng);

}  // namespace secbeam
