// SPDX-License-Identifier: Apache-2.0
//
// relay-irs: simulator and optimizer for IRS-assisted downlinks with
// controller relaying.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "relay_irs/commands.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <json.hpp>

#include "relay_irs/verify.hpp"

namespace relay_irs {

void write_file_atomic(const std::string &path, const std::string &content) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot open '" + tmp.string() + "' for writing");
        out << content;
        if (!out.flush())
            throw std::runtime_error("write failed for '" + tmp.string() + "'");
    }
    fs::rename(tmp, target);
}

int cmd_sweep(const FullConfig &cfg, const std::string &out_stem, std::ostream &log, bool quiet) {
    try {
        const SweepResult result = sweep_distance(cfg.experiment, cfg.ao);
        write_file_atomic(out_stem + "_trials.csv", trials_csv(result));
        write_file_atomic(out_stem + "_agg.csv", aggregate_csv(result));
        write_file_atomic(out_stem + "_trials.json", trials_json(result));
        write_file_atomic(out_stem + "_agg.json", aggregate_json(result));
        if (!quiet)
            log << "wrote " << out_stem << "_{trials,agg}.{csv,json} (" << result.trials.size()
                << " trial rows, " << result.aggregate.size() << " aggregate rows)\n";
        return 0;
    } catch (const std::exception &e) {
        log << "sweep failed: " << e.what() << " (output stem: " << out_stem << ")\n";
        return 1;
    }
}

int cmd_single(const FullConfig &cfg, double d0, std::optional<std::uint64_t> seed_override,
               std::ostream &out, bool quiet) {
    try {
        const std::uint64_t seed = seed_override.value_or(cfg.experiment.base_seed);
        RngStream parent = RngStream(seed).substream(0).substream(0);
        RngStream draw = parent.substream(0);
        RngStream solver = parent.substream(1);
        const ChannelSet cs =
            draw_channel_set(draw, cfg.experiment.geometry, cfg.experiment.fading, d0);
        const CascadedChannels casc = cascade(cs);
        const PowerBudget pb = cfg.experiment.power_budget();
        const Solution sol = ao_solve(cs, casc, pb, cfg.ao, solver);
        const RateBreakdown rb = rate_breakdown(pb, cs, casc, sol.theta1);

        if (!quiet) {
            out << "d0 = " << d0 << " m, seed = " << seed << ", M = " << cs.element_count()
                << "\n";
            out << "mode   : " << mode_name(sol.mode) << "\n";
            out << "alpha  : " << sol.alpha << "\n";
            out << "rate   : " << sol.rate << " bps/Hz (C2* = " << rb.c2_star << ")\n";
            out << "R_U    : " << rb.r_u << "  R_C: " << rb.r_c << "  R~_U*: " << rb.r_u_tilde_star
                << "\n";
            out << "trace  :";
            for (double v : sol.rate_trace)
                out << ' ' << v;
            out << "\n";
        }

        nlohmann::json j;
        j["d0_m"] = d0;
        j["seed"] = seed;
        j["mode"] = mode_name(sol.mode);
        j["alpha"] = sol.alpha;
        j["rate_bpshz"] = sol.rate;
        j["c2_star"] = rb.c2_star;
        j["r_u"] = rb.r_u;
        j["r_c"] = rb.r_c;
        j["r_u_tilde_star"] = rb.r_u_tilde_star;
        j["best_relaying_rate"] = sol.best_relaying_rate;
        j["iterations"] = sol.iterations;
        j["rate_trace"] = sol.rate_trace;
        std::vector<double> phases;
        phases.reserve(sol.theta1.size());
        for (const auto &e : sol.theta1.entries())
            phases.push_back(std::arg(e));
        j["theta1_phases"] = phases;
        out << j.dump(2) << "\n";
        return 0;
    } catch (const std::exception &e) {
        out << "single failed: " << e.what() << "\n";
        return 1;
    }
}

int cmd_verify(const FullConfig &cfg, std::ostream &out, bool quiet) {
    VerifyOptions opt;
    opt.seed = cfg.experiment.base_seed;
    // Reduced counts for an interactive check; the acceptance suite runs the
    // full battery.
    opt.oracle_instances = 50;
    opt.prop1_instances = 200;
    opt.prop2_instances = 200;
    opt.alpha_triples = 200;
    opt.dominance_instances = 100;
    opt.dominance_samples = 2000;
    opt.lifting_instances = 200;

    const VerifyReport report = run_verify(cfg.ao, opt);
    int failures = 0;
    for (const SuiteResult &s : report.suites) {
        if (!s.passed())
            ++failures;
        if (!quiet || !s.passed())
            out << (s.passed() ? "[PASS] " : "[FAIL] ") << s.name << ": " << s.checked
                << " checked, " << s.failed << " failed — " << s.detail << "\n";
    }
    out << (failures == 0 ? "verify: all suites passed\n"
                          : "verify: " + std::to_string(failures) + " suite(s) failed\n");
    return failures == 0 ? 0 : 1;
}

int cmd_oracle_check(const FullConfig &cfg, int m, std::ostream &out, bool quiet) {
    if (m < 1 || m > 4) {
        out << "oracle-check: m must be in 1..4\n";
        return 1;
    }
    // Grid cost grows as grid^M; shrink grids with M to keep runs short.
    const std::size_t phase_grid = (m <= 2) ? 64 : (m == 3 ? 24 : 12);
    const std::size_t alpha_grid = (m <= 2) ? 1001 : 201;
    const int instances = 20;

    PowerBudget pb;
    RngStream rng = RngStream(cfg.experiment.base_seed).substream(777);
    int ok = 0;
    double worst = 1.0;
    for (int i = 0; i < instances; ++i) {
        const ChannelSet cs = random_instance(rng, static_cast<std::size_t>(m));
        const CascadedChannels casc = cascade(cs);
        RngStream solver = rng.substream(100 + static_cast<std::uint64_t>(i));
        const Solution sol = ao_solve(cs, casc, pb, cfg.ao, solver);
        const Solution oracle = brute_force_p1(cs, casc, pb, phase_grid, alpha_grid);
        const double ratio = oracle.rate > 0.0 ? sol.rate / oracle.rate : 1.0;
        worst = std::min(worst, ratio);
        if (ratio >= 0.95)
            ++ok;
        if (!quiet)
            out << "instance " << i << ": ao " << sol.rate << " oracle " << oracle.rate
                << " ratio " << ratio << "\n";
    }
    out << "oracle-check m=" << m << ": " << ok << "/" << instances
        << " instances within 5% (worst ratio " << worst << ")\n";
    return ok == instances ? 0 : 1;
}

} // namespace relay_irs
