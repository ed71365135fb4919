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

#ifndef RELAY_IRS_VERIFY_HPP
#define RELAY_IRS_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "relay_irs/channel.hpp"
#include "relay_irs/optimizer.hpp"

namespace relay_irs {

struct SuiteResult {
    std::string name;
    int checked = 0;
    int failed = 0;
    std::string detail;

    bool passed() const { return failed == 0 && checked > 0; }
};

/// Instance counts for the verification battery. The defaults match the
/// full-strength acceptance run; cmd_verify may scale them down.
struct VerifyOptions {
    std::uint64_t seed = 1;
    int oracle_instances = 200;
    std::size_t oracle_phase_grid = 64;
    std::size_t oracle_alpha_grid = 1001;
    double oracle_ratio = 0.95;
    double oracle_pass_fraction = 0.95;
    int prop1_instances = 1000;
    int prop2_instances = 1000;
    int alpha_triples = 1000;
    int dominance_instances = 1000;
    int dominance_samples = 10000;
    int lifting_instances = 1000;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool all_passed() const;
};

/// Synthetic unit-scale channel instance for property suites; relay_boost
/// scales the controller-side links to reach relaying-favourable regimes.
ChannelSet random_instance(RngStream &rng, std::size_t m, double relay_boost = 1.0);

/// AO output contract: non-decreasing trace and the min{R~*, R_C*} bound.
/// Returns an empty string when the contract holds, else a description.
std::string ao_contract_violation(const Solution &sol, const RateBreakdown &rb);

/// Runs the full battery: oracle equivalence at M = 2, Propositions 1-3,
/// the AO trace contract over every AO run made here, closed-form phase
/// alignment dominance and the lifting identity.
VerifyReport run_verify(const AOConfig &ao, const VerifyOptions &opt);

} // namespace relay_irs

#endif
