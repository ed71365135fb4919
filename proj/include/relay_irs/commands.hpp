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

#ifndef RELAY_IRS_COMMANDS_HPP
#define RELAY_IRS_COMMANDS_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "relay_irs/config.hpp"

namespace relay_irs {

/// Atomic text-file write: temp file in the target directory, then rename.
void write_file_atomic(const std::string &path, const std::string &content);

/// Runs the distance sweep and writes <out_stem>_trials.csv/.json and
/// <out_stem>_agg.csv/.json. Returns the process exit status.
int cmd_sweep(const FullConfig &cfg, const std::string &out_stem, std::ostream &log, bool quiet);

/// One channel draw at d0, one AO solve; prints a human-readable report and
/// a JSON block (JSON only under quiet).
int cmd_single(const FullConfig &cfg, double d0, std::optional<std::uint64_t> seed_override,
               std::ostream &out, bool quiet);

/// Runs the verification battery with reduced instance counts and reports
/// per-suite pass/fail. Exit status 0 iff every suite passed.
int cmd_verify(const FullConfig &cfg, std::ostream &out, bool quiet);

/// Oracle-vs-AO comparison at a chosen array size (1 <= m <= 4).
int cmd_oracle_check(const FullConfig &cfg, int m, std::ostream &out, bool quiet);

} // namespace relay_irs

#endif
