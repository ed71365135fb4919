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

#ifndef RELAY_IRS_EXPERIMENT_HPP
#define RELAY_IRS_EXPERIMENT_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relay_irs/channel.hpp"
#include "relay_irs/optimizer.hpp"
#include "relay_irs/rate.hpp"

namespace relay_irs {

enum class Scheme { RelayingOptAlpha, RelayingEqualAlpha, ConventionalIRS, RelayNoIRS };

const char *scheme_name(Scheme s);
Scheme scheme_from_name(const std::string &name); // throws UnknownSchemeError

/// Scenario, sweep and reproducibility parameters. Powers are stored in dBm
/// here and converted to linear exactly once via power_budget().
struct ExperimentConfig {
    Geometry geometry;
    FadingSpec fading;
    double p_dbm = 8.0;
    double sigma2_dbm = -50.0;
    std::vector<double> d0_sweep = {10, 20, 30, 40, 50, 60, 70, 80, 90, 100};
    int trials = 50;
    std::uint64_t base_seed = 1;
    std::vector<Scheme> schemes = {Scheme::RelayingOptAlpha, Scheme::RelayingEqualAlpha,
                                   Scheme::ConventionalIRS, Scheme::RelayNoIRS};
    int threads = 0; // 0 = hardware concurrency

    PowerBudget power_budget() const;
    void validate() const;
};

struct TrialRecord {
    double d0 = 0.0;
    Scheme scheme = Scheme::ConventionalIRS;
    int trial = 0;
    double rate = 0.0;
    Mode mode = Mode::Conventional;
    double alpha = 1.0;
    std::uint64_t seed = 0; // key of the trial substream
};

struct AggregateRow {
    double d0 = 0.0;
    Scheme scheme = Scheme::ConventionalIRS;
    double mean_rate = 0.0;
    double std_rate = 0.0;
    double relay_fraction = 0.0;
    double mean_alpha = 0.0;
    int trials = 0;
};

struct SweepResult {
    std::vector<TrialRecord> trials;      // ordered by (d0, scheme, trial)
    std::vector<AggregateRow> aggregate;  // ordered by (d0, scheme)
};

/// Fixed equal time split: one reflection optimization at alpha = 1/2, with
/// the conventional mode as fallback when relaying is invalid there.
Solution solve_equal_alpha(const ChannelSet &cs, const CascadedChannels &casc,
                           const PowerBudget &pb, const AOConfig &ao, RngStream &rng);

/// The shared channel draw for one (d0, trial) cell; every scheme sees the
/// same realization.
ChannelSet paired_draws(const ExperimentConfig &cfg, std::size_t d0_index, int trial);

/// One trial of one scheme on the paired draw.
TrialRecord run_scenario(const ExperimentConfig &cfg, const AOConfig &ao, Scheme scheme,
                         std::size_t d0_index, int trial);

/// Full rate-versus-distance sweep. Trials run in parallel; the output is
/// identical to a serial run for a given config and seed.
SweepResult sweep_distance(const ExperimentConfig &cfg, const AOConfig &ao);

std::string trials_csv(const SweepResult &r);
std::string aggregate_csv(const SweepResult &r);
std::string trials_json(const SweepResult &r);
std::string aggregate_json(const SweepResult &r);

} // namespace relay_irs

#endif
