// SPDX-License-Identifier: Apache-2.0
//
// secbeam: chance-constrained secure beamformer design for MISO wiretap channels
//
// Command-line front-end. All physical quantities inside the library are
// linear; dB appears only in the config file and is converted on ingestion.
// Exit codes: 0 success, 2 design infeasible, 1 any other error.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "secbeam/config.hpp"
#include "secbeam/errors.hpp"
#include "secbeam/csv.hpp"
#include "secbeam/montecarlo.hpp"
#include "secbeam/scenario2.hpp"
#include "secbeam/scenario3.hpp"
#include "secbeam/selfcheck.hpp"

namespace {

using nlohmann::json;
using namespace secbeam;

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

struct CommonFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<int> samples;
    std::optional<std::string> out;
    std::optional<double> tol;
    int threads = 1;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool config_required = true) {
    auto* opt = cmd->add_option("--config", f.config_path, "JSON run configuration");
    if (config_required) opt->required();
    cmd->add_option("--seed", f.seed, "master seed; overrides the config's scenario seed");
    cmd->add_option("--samples", f.samples, "Monte Carlo sample count override");
    cmd->add_option("--out", f.out, "output path override");
    cmd->add_option("--tol", f.tol, "rate tolerance override");
    cmd->add_option("--threads", f.threads, "worker thread cap (control flow is serial)")
        ->check(CLI::PositiveNumber);
}

std::uint64_t effective_seed(const RunConfig& rc, const CommonFlags& f) {
    return f.seed ? *f.seed : rc.random.seed;
}

void emit_text(const std::string& text, const RunConfig& rc, const CommonFlags& f) {
    const std::string path = f.out ? *f.out : rc.out_path;
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error("cannot open for writing: " + path);
    os << text;
}

json solution_json(const BeamformerSolution& sol) {
    json margins = json::array();
    for (double m : sol.margins) margins.push_back(m);
    return json{{"status", to_string(sol.status)},
                {"power", sol.power},
                {"rank_ratio", sol.rank_ratio},
                {"margins", margins},
                {"w", cvector_json(sol.w)}};
}

BeamformerSolution dispatch_powermin(const RunConfig& rc, const ScenarioSpec& spec,
                                     double rate, std::uint64_t seed) {
    switch (rc.variant) {
        case ScenarioVariant::StatisticalEcsi:
            return solve_sdr(build_deterministic(rc.system, spec, rate));
        case ScenarioVariant::ImperfectEcsi:
            return solve_powermin(rc.system, spec, rate);
        case ScenarioVariant::ImperfectBoth:
            return solve_powermin3(rc.system, spec, rate, RngStream(seed, 0xdd));
    }
    throw BadConfig("unknown scenario variant");
}

int run_powermin(const RunConfig& rc, const CommonFlags& f) {
    const std::uint64_t seed = effective_seed(rc, f);
    const ScenarioSpec spec = resolve_scenario(rc, seed);
    BeamformerSolution sol;
    try {
        sol = dispatch_powermin(rc, spec, rc.task.rate, seed);
    } catch (const RestrictionUnrecoverable&) {
        sol.status = DesignStatus::Infeasible;
    } catch (const RandomizationFailed&) {
        sol.status = DesignStatus::Infeasible;
    } catch (const DegenerateDirection&) {
        sol.status = DesignStatus::Infeasible;
    }
    json out = solution_json(sol);
    out["rate"] = rc.task.rate;
    out["scenario"] = to_string(rc.variant);
    emit_text(out.dump(2) + "\n", rc, f);
    return sol.status == DesignStatus::Optimal ? kExitOk : kExitInfeasible;
}

int run_maxrate(const RunConfig& rc, const CommonFlags& f) {
    const std::uint64_t seed = effective_seed(rc, f);
    const ScenarioSpec spec = resolve_scenario(rc, seed);
    const double tol = f.tol ? *f.tol : rc.task.tol;
    const BisectionResult res =
        max_secrecy_rate(rc.system, spec, tol, RngStream(seed, 0xb1));
    json out = solution_json(res.solution);
    out["rate_opt"] = res.rate_opt;
    out["iterations"] = res.iterations;
    out["bracket_width"] = res.bracket_width;
    out["scenario"] = to_string(rc.variant);
    emit_text(out.dump(2) + "\n", rc, f);
    return res.rate_opt > 0.0 ? kExitOk : kExitInfeasible;
}

int run_verify(const RunConfig& rc, const CommonFlags& f) {
    const std::uint64_t seed = effective_seed(rc, f);
    const ScenarioSpec spec = resolve_scenario(rc, seed);
    BeamformerSolution sol;
    try {
        sol = dispatch_powermin(rc, spec, rc.task.rate, seed);
    } catch (const Error&) {
        sol.status = DesignStatus::Infeasible;
    }
    if (sol.status != DesignStatus::Optimal) {
        std::cerr << "design infeasible at rate " << rc.task.rate << "\n";
        return kExitInfeasible;
    }
    const int n = f.samples ? *f.samples : rc.task.samples;
    const OutageReport rep = empirical_outage(sol.w, rc.system, spec, rc.task.rate, n,
                                              RngStream(seed, 0x5a));
    CsvTable t;
    t.header = {"eve", "empirical_outage", "ci_halfwidth", "budget"};
    for (size_t k = 0; k < rep.per_eve_outage.size(); ++k)
        t.rows.push_back({std::to_string(k), csv_number(rep.per_eve_outage[k]),
                          csv_number(rep.ci_halfwidth[k]),
                          csv_number(rc.system.outage_probs[k])});
    t.rows.push_back({"overall", csv_number(rep.overall_outage),
                      csv_number(rep.overall_ci), ""});
    std::ostringstream os;
    write_csv(os, t);
    emit_text(os.str(), rc, f);
    return kExitOk;
}

int run_sweep_cmd(const RunConfig& rc, const CommonFlags& f) {
    const std::uint64_t seed = effective_seed(rc, f);
    SweepConfig sweep = rc.task.sweep;
    if (f.samples) sweep.outage_samples = *f.samples;
    if (f.tol) sweep.rate_tol = *f.tol;
    const SweepTable table = run_sweep(sweep, RngStream(seed, 0x5e));
    CsvTable t;
    t.header = {table.axis_name, "mean_rate", "mean_outage", "n_fail"};
    for (const SweepRow& row : table.rows)
        t.rows.push_back({csv_number(row.value), csv_number(row.mean_rate),
                          csv_number(row.mean_outage), std::to_string(row.n_fail)});
    std::ostringstream os;
    write_csv(os, t);
    emit_text(os.str(), rc, f);
    return kExitOk;
}

int run_selftest(const CommonFlags& f) {
    const std::uint64_t seed = f.seed ? *f.seed : 1;
    const std::vector<CheckResult> results = run_checks(fast_scale(), seed, &std::cout);
    for (const CheckResult& r : results)
        if (!r.pass) return kExitError;
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust secrecy beamformer designer and Monte Carlo verifier"};
    app.require_subcommand(1);

    CommonFlags flags;
    CLI::App* powermin =
        app.add_subcommand("powermin", "minimum-power design at a fixed secrecy rate");
    CLI::App* maxrate =
        app.add_subcommand("maxrate", "maximum secrecy rate under the power budget");
    CLI::App* verify =
        app.add_subcommand("verify", "Monte Carlo outage verification of a design");
    CLI::App* sweep = app.add_subcommand("sweep", "parameter sweep with CSV output");
    CLI::App* selftest =
        app.add_subcommand("selftest", "fast built-in verification battery");
    for (CLI::App* cmd : {powermin, maxrate, verify, sweep})
        add_common(cmd, flags);
    add_common(selftest, flags, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        if (selftest->parsed()) return run_selftest(flags);
        const RunConfig rc = load_run_config(flags.config_path);
        if (powermin->parsed()) return run_powermin(rc, flags);
        if (maxrate->parsed()) return run_maxrate(rc, flags);
        if (verify->parsed()) return run_verify(rc, flags);
        if (sweep->parsed()) return run_sweep_cmd(rc, flags);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitError;
    }
    return kExitError;
}
