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

#ifndef RELAY_IRS_ERRORS_HPP
#define RELAY_IRS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace relay_irs {

// Input-contract violations.
struct NonHermitianError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct DimensionMismatchError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct NonPositiveDistanceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct ZeroDistanceError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct AlphaOutOfRangeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct PreconditionViolatedError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct TooLargeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};
struct UnknownSchemeError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Numerical failures detected at run time.
struct NotPsdError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct NoConvergenceError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Configuration handling.
struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace relay_irs

#endif
