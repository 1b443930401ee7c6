// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/ratemax.hpp"

#include <cmath>

#include "secbeam/errors.hpp"
#include "secbeam/scenario2.hpp"
#include "secbeam/scenario3.hpp"

namespace secbeam {

double rate_upper_bound(const SystemConfig& cfg, const ScenarioSpec& spec) {
    double hnorm = spec.h.norm();
    if (spec.variant == ScenarioVariant::ImperfectBoth)
        hnorm += 3.0 * std::sqrt(std::max(spec.bob_cov.trace().real(), 0.0));
    return std::log2(1.0 + cfg.power_budget * hnorm * hnorm / cfg.noise_bob);
}

namespace {

constexpr int kMaxIter = 30;

BeamformerSolution probe(const SystemConfig& cfg, const ScenarioSpec& spec, double r,
                         const RngStream& rng) {
    switch (spec.variant) {
        case ScenarioVariant::StatisticalEcsi:
            return solve_sdr(build_deterministic(cfg, spec, r));
        case ScenarioVariant::ImperfectEcsi:
            return solve_powermin(cfg, spec, r);
        case ScenarioVariant::ImperfectBoth:
            return solve_powermin3(cfg, spec, r, rng);
    }
    throw BadConfig("unknown scenario variant");
}

}  // namespace

BisectionResult max_secrecy_rate(const SystemConfig& cfg, const ScenarioSpec& spec,
                                 double rate_tol, const RngStream& rng) {
    if (!(rate_tol > 0.0)) throw BadConfig("rate tolerance must be positive");
    BisectionResult res;
    res.solution.w = CVector::Zero(cfg.n_tx);
    res.solution.status = DesignStatus::Infeasible;

    double lo = 0.0;
    double hi = rate_upper_bound(cfg, spec);
    if (hi <= rate_tol) {
        res.bracket_width = hi;
        return res;
    }

    auto attempt = [&](double r) -> bool {
        BeamformerSolution sol;
        try {
            sol = probe(cfg, spec, r, rng.substream(static_cast<std::uint64_t>(res.iterations)));
        } catch (const RankViolation&) {
            return false;
        } catch (const RestrictionUnrecoverable&) {
            return false;
        } catch (const RandomizationFailed&) {
            return false;
        } catch (const DegenerateDirection&) {
            return false;
        }
        if (sol.status != DesignStatus::Optimal || sol.power > cfg.power_budget + 1e-6)
            return false;
        res.solution = std::move(sol);
        return true;
    };

    while (hi - lo > rate_tol && res.iterations < kMaxIter) {
        const double mid = 0.5 * (lo + hi);
        ++res.iterations;
        if (attempt(mid))
            lo = mid;
        else
            hi = mid;
    }
    // never found an attainable probe: confirm even the tolerance rate fails
    if (lo == 0.0 && !attempt(rate_tol)) {
        res.rate_opt = 0.0;
        res.solution = BeamformerSolution{};
        res.solution.w = CVector::Zero(cfg.n_tx);
        res.solution.status = DesignStatus::Infeasible;
        res.bracket_width = hi;
        return res;
    }
    res.rate_opt = (lo > 0.0) ? lo : rate_tol;
    res.bracket_width = hi - lo;
    return res;
}

}  // namespace secbeam
