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

#ifndef RELAY_IRS_CONFIG_HPP
#define RELAY_IRS_CONFIG_HPP

#include <string>

#include "relay_irs/experiment.hpp"
#include "relay_irs/optimizer.hpp"

namespace relay_irs {

struct FullConfig {
    ExperimentConfig experiment;
    AOConfig ao;
};

/// Parses the JSON config (sections: geometry, fading, power, solver, sweep;
/// // and /* */ comments allowed). Unknown keys raise ParseError; invariant
/// violations raise ValidationError. An empty or absent body yields the
/// built-in defaults.
FullConfig parse_config_text(const std::string &text);

/// As parse_config_text, reading from a file. Throws ParseError if the file
/// cannot be read.
FullConfig parse_config_file(const std::string &path);

} // namespace relay_irs

#endif
