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

#include "relay_irs/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <mutex>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace relay_irs {

const char *scheme_name(Scheme s) {
    switch (s) {
    case Scheme::RelayingOptAlpha:
        return "RelayingOptAlpha";
    case Scheme::RelayingEqualAlpha:
        return "RelayingEqualAlpha";
    case Scheme::ConventionalIRS:
        return "ConventionalIRS";
    case Scheme::RelayNoIRS:
        return "RelayNoIRS";
    }
    return "?";
}

Scheme scheme_from_name(const std::string &name) {
    for (Scheme s : {Scheme::RelayingOptAlpha, Scheme::RelayingEqualAlpha, Scheme::ConventionalIRS,
                     Scheme::RelayNoIRS})
        if (name == scheme_name(s))
            return s;
    throw UnknownSchemeError("unknown scheme: " + name);
}

PowerBudget ExperimentConfig::power_budget() const {
    PowerBudget pb;
    pb.p_a = std::pow(10.0, p_dbm / 10.0);
    pb.p_c = pb.p_a;
    pb.p_max = pb.p_a;
    pb.sigma2 = std::pow(10.0, sigma2_dbm / 10.0);
    return pb;
}

void ExperimentConfig::validate() const {
    geometry.validate();
    fading.validate();
    power_budget().validate();
    if (trials < 1)
        throw ValidationError("sweep: trials must be >= 1");
    if (d0_sweep.empty())
        throw ValidationError("sweep: d0 list must not be empty");
    for (double d : d0_sweep)
        if (!(d > 0.0))
            throw ValidationError("sweep: d0 values must be > 0");
    if (schemes.empty())
        throw ValidationError("sweep: scheme list must not be empty");
    if (threads < 0)
        throw ValidationError("sweep: threads must be >= 0");
}

namespace {

// One stream per (d0, trial) cell: substream 0 draws the channel (shared by
// all schemes), substreams 1+k drive scheme k's randomization.
RngStream trial_stream(const ExperimentConfig &cfg, std::size_t d0_index, int trial) {
    return RngStream(cfg.base_seed).substream(d0_index).substream(static_cast<std::uint64_t>(trial));
}

ChannelSet strip_irs(const ChannelSet &cs) {
    ChannelSet flat;
    flat.h_au = cs.h_au;
    flat.h_ac = cs.h_ac;
    flat.g_cu = cs.g_cu;
    return flat;
}

} // namespace

Solution solve_equal_alpha(const ChannelSet &cs, const CascadedChannels &casc,
                           const PowerBudget &pb, const AOConfig &ao, RngStream &rng) {
    const PhaseVector theta_u_star = align_phases(cs.h_au, casc.q_u);
    const RateBreakdown rb = rate_breakdown(pb, cs, casc, theta_u_star);
    Solution s;
    s.mode = Mode::Conventional;
    s.theta1 = theta_u_star;
    s.theta2 = align_phases(cs.g_cu, casc.q_tilde_u);
    s.alpha = 1.0;
    s.rate = rb.c2_star;

    const double alpha = 0.5;
    const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
    auto [delta_star, psi] = bisection_p31(alpha, lm, rb, pb, ao);
    (void)delta_star;
    const PhaseVector theta = gaussian_randomization(psi, alpha, rb, pb, lm, ao, rng);
    const double rho_u = snr_user_phase1(pb, cs.h_au, casc.q_u, theta);
    const double rho_c = snr_controller_phase1(pb, cs.h_ac, casc.q_c, theta);
    if (rho_c > rho_u) {
        s.mode = Mode::Relaying;
        s.theta1 = theta;
        s.alpha = alpha;
        s.rate = rate_c1(std::log2(1.0 + rho_u), rb.r_u_tilde_star, std::log2(1.0 + rho_c), alpha);
        s.best_relaying_rate = s.rate;
    }
    return s;
}

ChannelSet paired_draws(const ExperimentConfig &cfg, std::size_t d0_index, int trial) {
    if (d0_index >= cfg.d0_sweep.size())
        throw std::out_of_range("paired_draws: d0_index out of range");
    RngStream draw = trial_stream(cfg, d0_index, trial).substream(0);
    return draw_channel_set(draw, cfg.geometry, cfg.fading, cfg.d0_sweep[d0_index]);
}

TrialRecord run_scenario(const ExperimentConfig &cfg, const AOConfig &ao, Scheme scheme,
                         std::size_t d0_index, int trial) {
    const ChannelSet cs = paired_draws(cfg, d0_index, trial);
    const PowerBudget pb = cfg.power_budget();
    RngStream parent = trial_stream(cfg, d0_index, trial);
    RngStream solver = parent.substream(1 + static_cast<std::uint64_t>(scheme));

    TrialRecord rec;
    rec.d0 = cfg.d0_sweep[d0_index];
    rec.scheme = scheme;
    rec.trial = trial;
    rec.seed = parent.key();

    Solution sol;
    switch (scheme) {
    case Scheme::RelayingOptAlpha: {
        const CascadedChannels casc = cascade(cs);
        sol = ao_solve(cs, casc, pb, ao, solver);
        break;
    }
    case Scheme::RelayingEqualAlpha: {
        const CascadedChannels casc = cascade(cs);
        sol = solve_equal_alpha(cs, casc, pb, ao, solver);
        break;
    }
    case Scheme::ConventionalIRS: {
        const CascadedChannels casc = cascade(cs);
        const PhaseVector theta_u_star = align_phases(cs.h_au, casc.q_u);
        const RateBreakdown rb = rate_breakdown(pb, cs, casc, theta_u_star);
        sol.mode = Mode::Conventional;
        sol.theta1 = theta_u_star;
        sol.theta2 = align_phases(cs.g_cu, casc.q_tilde_u);
        sol.alpha = 1.0;
        sol.rate = rb.c2_star;
        break;
    }
    case Scheme::RelayNoIRS: {
        const ChannelSet flat = strip_irs(cs);
        const CascadedChannels casc = cascade(flat);
        sol = brute_force_p1(flat, casc, pb, 1, 2); // M = 0: closed forms only
        break;
    }
    }

    rec.rate = sol.rate;
    rec.mode = sol.mode;
    rec.alpha = sol.alpha;
    return rec;
}

SweepResult sweep_distance(const ExperimentConfig &cfg, const AOConfig &ao) {
    cfg.validate();
    ao.validate();

    struct Cell {
        std::size_t d0_index;
        Scheme scheme;
        int trial;
    };
    std::vector<Cell> cells;
    for (std::size_t di = 0; di < cfg.d0_sweep.size(); ++di)
        for (Scheme s : cfg.schemes)
            for (int t = 0; t < cfg.trials; ++t)
                cells.push_back({di, s, t});

    std::vector<TrialRecord> records(cells.size());
    const unsigned hw = std::thread::hardware_concurrency();
    const unsigned n_threads =
        cfg.threads > 0 ? static_cast<unsigned>(cfg.threads) : (hw > 0 ? hw : 1);

    std::atomic<std::size_t> next{0};
    std::mutex error_mutex;
    std::exception_ptr first_error;
    auto worker = [&] {
        try {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= cells.size())
                    return;
                const Cell &c = cells[i];
                records[i] = run_scenario(cfg, ao, c.scheme, c.d0_index, c.trial);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error)
                first_error = std::current_exception();
        }
    };
    if (n_threads <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < n_threads; ++t)
            pool.emplace_back(worker);
        for (auto &th : pool)
            th.join();
    }
    if (first_error)
        std::rethrow_exception(first_error);

    SweepResult result;
    result.trials = std::move(records);

    // Aggregate in the deterministic (d0, scheme) order of the cell list.
    for (std::size_t di = 0; di < cfg.d0_sweep.size(); ++di) {
        for (Scheme s : cfg.schemes) {
            AggregateRow row;
            row.d0 = cfg.d0_sweep[di];
            row.scheme = s;
            double sum = 0.0, sum_alpha = 0.0;
            int relayed = 0;
            std::vector<double> rates;
            for (const TrialRecord &r : result.trials) {
                if (r.d0 == row.d0 && r.scheme == s) {
                    rates.push_back(r.rate);
                    sum += r.rate;
                    sum_alpha += r.alpha;
                    if (r.mode == Mode::Relaying)
                        ++relayed;
                }
            }
            row.trials = static_cast<int>(rates.size());
            if (row.trials > 0) {
                row.mean_rate = sum / row.trials;
                row.mean_alpha = sum_alpha / row.trials;
                row.relay_fraction = static_cast<double>(relayed) / row.trials;
                if (row.trials > 1) {
                    double ss = 0.0;
                    for (double r : rates)
                        ss += (r - row.mean_rate) * (r - row.mean_rate);
                    row.std_rate = std::sqrt(ss / (row.trials - 1));
                }
            }
            result.aggregate.push_back(row);
        }
    }
    return result;
}

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

} // namespace

std::string trials_csv(const SweepResult &r) {
    std::ostringstream out;
    out << "d0_m,scheme,trial,rate_bpshz,mode,alpha,seed\n";
    for (const TrialRecord &t : r.trials)
        out << fmt_double(t.d0) << ',' << scheme_name(t.scheme) << ',' << t.trial << ','
            << fmt_double(t.rate) << ',' << mode_name(t.mode) << ',' << fmt_double(t.alpha) << ','
            << t.seed << '\n';
    return out.str();
}

std::string aggregate_csv(const SweepResult &r) {
    std::ostringstream out;
    out << "d0_m,scheme,mean_rate,std_rate,relay_fraction,mean_alpha,trials\n";
    for (const AggregateRow &a : r.aggregate)
        out << fmt_double(a.d0) << ',' << scheme_name(a.scheme) << ',' << fmt_double(a.mean_rate)
            << ',' << fmt_double(a.std_rate) << ',' << fmt_double(a.relay_fraction) << ','
            << fmt_double(a.mean_alpha) << ',' << a.trials << '\n';
    return out.str();
}

std::string trials_json(const SweepResult &r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const TrialRecord &t : r.trials)
        rows.push_back({{"d0_m", t.d0},
                        {"scheme", scheme_name(t.scheme)},
                        {"trial", t.trial},
                        {"rate_bpshz", t.rate},
                        {"mode", mode_name(t.mode)},
                        {"alpha", t.alpha},
                        {"seed", t.seed}});
    return rows.dump(2) + "\n";
}

std::string aggregate_json(const SweepResult &r) {
    nlohmann::json rows = nlohmann::json::array();
    for (const AggregateRow &a : r.aggregate)
        rows.push_back({{"d0_m", a.d0},
                        {"scheme", scheme_name(a.scheme)},
                        {"mean_rate", a.mean_rate},
                        {"std_rate", a.std_rate},
                        {"relay_fraction", a.relay_fraction},
                        {"mean_alpha", a.mean_alpha},
                        {"trials", a.trials}});
    return rows.dump(2) + "\n";
}

} // namespace relay_irs
