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

#ifndef RELAY_IRS_RATE_HPP
#define RELAY_IRS_RATE_HPP

#include "relay_irs/channel.hpp"
#include "relay_irs/numerics.hpp"

namespace relay_irs {

/// Unit-modulus reflection vector. Entries are constructed as e^{j phase},
/// so the modulus invariant holds by construction.
class PhaseVector {
  public:
    PhaseVector() = default;

    static PhaseVector from_phases(const std::vector<double> &phases);
    /// Validates |entry| == 1 within tol.
    static PhaseVector from_entries(const CVec &entries, double tol = 1e-12);
    static PhaseVector all_ones(std::size_t m);

    const CVec &entries() const { return entries_; }
    std::size_t size() const { return entries_.size(); }

  private:
    CVec entries_;
};

/// Transmit powers and noise power, all linear and in the same unit system
/// (the config uses mW). dB conversions happen at parse time only.
struct PowerBudget {
    double p_a = 1.0;
    double p_c = 1.0;
    double p_max = 1.0;
    double sigma2 = 1.0;

    void validate() const;
};

/// SNRs and rates at a given Phase-1 reflection vector, together with the
/// closed-form optima that do not depend on it:
///   rho_u_star       = P_A (|h_AU| + ||q_U||_1)^2 / sigma^2
///   rho_c_star       = P_A (|h_AC| + ||q_C||_1)^2 / sigma^2
///   rho_u_tilde_star = P_C (|h_CU| + ||q~_U||_1)^2 / sigma^2
struct RateBreakdown {
    double rho_u = 0.0;
    double rho_c = 0.0;
    double rho_u_tilde_star = 0.0;
    double rho_u_star = 0.0;
    double rho_c_star = 0.0;
    double r_u = 0.0;
    double r_c = 0.0;
    double r_u_tilde_star = 0.0;
    double c2_star = 0.0;

    double r_c_star() const; // log2(1 + rho_c_star)
};

/// Phase-1 SNR at the user: P_A |h_AU + q_U^H theta1|^2 / sigma^2.
double snr_user_phase1(const PowerBudget &pb, CScalar h_au, const CVec &q_u,
                       const PhaseVector &theta1);

/// Phase-1 SNR at the controller: P_A |h_AC + q_C^H theta1|^2 / sigma^2.
double snr_controller_phase1(const PowerBudget &pb, CScalar h_ac, const CVec &q_c,
                             const PhaseVector &theta1);

/// Phase-2 SNR at the user: P_C |h_CU + q~_U^H theta2|^2 / sigma^2.
double snr_user_phase2(const PowerBudget &pb, CScalar g_cu, const CVec &q_tilde_u,
                       const PhaseVector &theta2);

/// Closed-form optimal reflection theta[m] = e^{j(arg(h) + arg(q[m]))},
/// which attains |h + q^H theta| = |h| + ||q||_1. arg(0) is taken as 0.
PhaseVector align_phases(CScalar h, const CVec &q);

RateBreakdown rate_breakdown(const PowerBudget &pb, const ChannelSet &cs,
                             const CascadedChannels &casc, const PhaseVector &theta1);

/// Two-phase relaying rate min{alpha*r_u + (1-alpha)*r_u_tilde_star, alpha*r_c}.
double rate_c1(double r_u, double r_u_tilde_star, double r_c, double alpha);

struct RateGap {
    double delta = 0.0;  // min(delta1, delta2) = C1 - C2*
    double delta1 = 0.0; // alpha*(r_u - r~*) + r~* - C2*
    double delta2 = 0.0; // alpha*r_c - C2*
};

RateGap rate_gap(const RateBreakdown &rb, double r_u, double r_c, double alpha);

} // namespace relay_irs

#endif
