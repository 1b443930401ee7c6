// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels

#include "secbeam/montecarlo.hpp"

#include <cmath>
#include <limits>

#include "secbeam/errors.hpp"

namespace secbeam {

double secrecy_rate(const CVector& w, const ChannelRealization& real, const SystemConfig& cfg) {
    const double bob = std::log2(1.0 + std::norm(real.h.dot(w)) / cfg.noise_bob);
    double eve = 0.0;
    for (size_t k = 0; k < real.g.size(); ++k)
        eve = std::max(eve, std::log2(1.0 + std::norm(real.g[k].dot(w)) / cfg.noise_eves[k]));
    return std::max(bob - eve, 0.0);
}

OutageReport empirical_outage(const CVector& w, const SystemConfig& cfg,
                              const ScenarioSpec& spec, double r_target, int n,
                              const RngStream& rng) {
    const ScenarioSpec checked = validate(cfg, spec);
    const SpecSampler sampler(checked);
    const int n_eves = cfg.n_eves();

    OutageReport rep;
    rep.n_samples = n;
    rep.rate_samples.reserve(n);
    std::vector<int> eve_hits(n_eves, 0);
    int overall_hits = 0;

    for (int i = 0; i < n; ++i) {
        RngStream draw = rng.substream(i);
        const ChannelRealization real = sampler.draw(draw);
        const double bob = std::log2(1.0 + std::norm(real.h.dot(w)) / cfg.noise_bob);
        double worst_eve = 0.0;
        for (int k = 0; k < n_eves; ++k) {
            const double eve =
                std::log2(1.0 + std::norm(real.g[k].dot(w)) / cfg.noise_eves[k]);
            worst_eve = std::max(worst_eve, eve);
            if (std::max(bob - eve, 0.0) < r_target) ++eve_hits[k];
        }
        const double rate = std::max(bob - worst_eve, 0.0);
        rep.rate_samples.push_back(rate);
        if (rate < r_target) ++overall_hits;
    }

    auto ci = [n](double p) { return 3.0 * std::sqrt(std::max(p * (1.0 - p), 0.0) / n); };
    for (int k = 0; k < n_eves; ++k) {
        const double p = static_cast<double>(eve_hits[k]) / n;
        rep.per_eve_outage.push_back(p);
        rep.ci_halfwidth.push_back(ci(p));
    }
    rep.overall_outage = static_cast<double>(overall_hits) / n;
    rep.overall_ci = ci(rep.overall_outage);
    return rep;
}

BeamformerSolution nonrobust_baseline(const SystemConfig& cfg, const ScenarioSpec& spec,
                                      double r, const RngStream& rng) {
    if (!(r > 0.0)) throw BadRate();
    if (spec.variant == ScenarioVariant::StatisticalEcsi)
        throw BadConfig("the baseline needs point estimates of the Eve channels");
    const ScenarioSpec checked = validate(cfg, spec);
    const int nt = cfg.n_tx;
    const int n_eves = cfg.n_eves();
    const double two_r = std::exp2(r);

    std::vector<CMatrix> m(n_eves);
    std::vector<double> b(n_eves);
    const CMatrix hh = checked.h * checked.h.adjoint();
    for (int k = 0; k < n_eves; ++k) {
        m[k] = symmetrize((cfg.noise_eves[k] / (cfg.noise_bob * two_r)) * hh -
                              checked.g_est[k] * checked.g_est[k].adjoint(),
                          1e-8);
        b[k] = cfg.noise_eves[k] * (1.0 - 1.0 / two_r);
    }

    ConeModel model;
    const HermVar w = model.add_hermitian(nt);
    for (int k = 0; k < n_eves; ++k)
        model.add_nonneg(w.inner(m[k]) - LinExpr::constant_of(b[k]));
    model.add_psd(w.expr());
    model.minimize(w.trace());
    const ModelSolution ms = model.run();

    BeamformerSolution sol;
    sol.status = ms.status;
    if (ms.status != DesignStatus::Optimal) return sol;

    const CMatrix wv = symmetrize(model.value(w, ms.xi), 1e-6);
    const EigDecomp e = eig_hermitian(wv);
    const double l1 = std::max(e.values(0), 0.0);
    sol.rank_ratio = (l1 > 0.0 && e.values.size() > 1) ? std::max(e.values(1), 0.0) / l1 : 0.0;

    // cheapest direction that can be scaled into feasibility
    auto power_of = [&](const CVector& u) {
        double need = 0.0;
        for (int k = 0; k < n_eves; ++k) {
            const double q = (u.adjoint() * m[k] * u)(0).real() / u.squaredNorm();
            if (q <= 0.0 && b[k] > 0.0) return std::numeric_limits<double>::infinity();
            if (q > 0.0) need = std::max(need, b[k] / q);
        }
        return need;
    };
    CVector best_dir = e.vectors.col(0);
    double best_power = power_of(best_dir);
    if (sol.rank_ratio > 1e-6) {
        const CMatrix root = psd_sqrt(psd_project(wv));
        for (int l = 0; l < 50; ++l) {
            RngStream sub = rng.substream(l);
            const CVector cand = root * sub.cnormal_vector(nt);
            if (cand.norm() < 1e-12) continue;
            const double p = power_of(cand);
            if (p < best_power) {
                best_power = p;
                best_dir = cand;
            }
        }
    }
    if (!std::isfinite(best_power)) {
        sol.status = DesignStatus::NumericalTrouble;
        return sol;
    }
    sol.w = std::sqrt(best_power) * best_dir / best_dir.norm();
    sol.power = sol.w.squaredNorm();
    for (int k = 0; k < n_eves; ++k)
        sol.margins.push_back((sol.w.adjoint() * m[k] * sol.w)(0).real() - b[k]);
    return sol;
}

const char* to_string(SweepConfig::Axis a) {
    switch (a) {
        case SweepConfig::Axis::PowerDb: return "power_dB";
        case SweepConfig::Axis::EpsB: return "eps_b";
        case SweepConfig::Axis::EpsE: return "eps_e";
        case SweepConfig::Axis::POut: return "p_out";
    }
    return "?";
}

SweepTable run_sweep(const SweepConfig& sweep, const RngStream& rng) {
    for (size_t i = 1; i < sweep.grid.size(); ++i)
        if (!(sweep.grid[i] > sweep.grid[i - 1]))
            throw BadConfig("sweep grid must be strictly increasing");
    if (sweep.grid.empty()) throw BadConfig("sweep grid is empty");

    SweepTable table;
    table.axis_name = to_string(sweep.axis);
    for (size_t gi = 0; gi < sweep.grid.size(); ++gi) {
        const double v = sweep.grid[gi];
        double power_db = sweep.power_db, eps_b = sweep.eps_b, eps_e = sweep.eps_e,
               p_out = sweep.p_out;
        switch (sweep.axis) {
            case SweepConfig::Axis::PowerDb: power_db = v; break;
            case SweepConfig::Axis::EpsB: eps_b = v; break;
            case SweepConfig::Axis::EpsE: eps_e = v; break;
            case SweepConfig::Axis::POut: p_out = v; break;
        }
        SystemConfig cfg;
        cfg.n_tx = sweep.n_tx;
        cfg.noise_bob = 1.0;
        cfg.noise_eves.assign(sweep.n_eves, 1.0);
        cfg.power_budget = std::pow(10.0, power_db / 10.0);
        cfg.outage_probs.assign(sweep.n_eves, p_out);

        SweepRow row;
        row.value = v;
        double rate_sum = 0.0, rate_sq = 0.0, outage_sum = 0.0;
        int outage_count = 0;
        for (int inst = 0; inst < sweep.n_instances; ++inst) {
            RngStream ir = rng.substream(gi * 1000003ULL + inst);
            const ScenarioSpec spec =
                random_spec(sweep.variant, sweep.n_tx, sweep.n_eves, eps_b, eps_e, ir);
            BisectionResult res;
            try {
                res = max_secrecy_rate(cfg, spec, sweep.rate_tol, ir.substream(1));
            } catch (const Error&) {
                ++row.n_fail;
                continue;
            }
            ++row.n_ok;
            rate_sum += res.rate_opt;
            rate_sq += res.rate_opt * res.rate_opt;
            if (res.rate_opt > 0.0 && sweep.outage_samples > 0) {
                const OutageReport rep =
                    empirical_outage(res.solution.w, cfg, spec, res.rate_opt,
                                     sweep.outage_samples, ir.substream(2));
                outage_sum += rep.overall_outage;
                ++outage_count;
            }
        }
        row.mean_rate = row.n_ok ? rate_sum / row.n_ok : 0.0;
        if (row.n_ok > 1) {
            const double var =
                std::max(rate_sq / row.n_ok - row.mean_rate * row.mean_rate, 0.0);
            row.rate_se = std::sqrt(var / row.n_ok);
        }
        row.mean_outage = outage_count ? outage_sum / outage_count : 0.0;
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace secbeam
