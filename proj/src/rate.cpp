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

#include "relay_irs/rate.hpp"

#include <cmath>

namespace relay_irs {

PhaseVector PhaseVector::from_phases(const std::vector<double> &phases) {
    PhaseVector p;
    p.entries_.resize(phases.size());
    for (std::size_t m = 0; m < phases.size(); ++m)
        p.entries_[m] = std::polar(1.0, phases[m]);
    return p;
}

PhaseVector PhaseVector::from_entries(const CVec &entries, double tol) {
    for (const auto &e : entries)
        if (std::abs(std::abs(e) - 1.0) > tol)
            throw std::invalid_argument("PhaseVector: entry modulus deviates from 1 by more than " +
                                        std::to_string(tol));
    PhaseVector p;
    p.entries_ = entries;
    return p;
}

PhaseVector PhaseVector::all_ones(std::size_t m) {
    PhaseVector p;
    p.entries_.assign(m, CScalar(1.0, 0.0));
    return p;
}

void PowerBudget::validate() const {
    if (!(p_a > 0.0) || p_a > p_max)
        throw ValidationError("power: need 0 < p_a <= p_max");
    if (!(p_c > 0.0) || p_c > p_max)
        throw ValidationError("power: need 0 < p_c <= p_max");
    if (!(sigma2 > 0.0))
        throw ValidationError("power: need sigma2 > 0");
}

double RateBreakdown::r_c_star() const {
    return std::log2(1.0 + rho_c_star);
}

namespace {

double combined_snr(double power, double sigma2, CScalar h, const CVec &q,
                    const PhaseVector &theta) {
    if (q.size() != theta.size())
        throw DimensionMismatchError("snr: cascaded channel and theta lengths differ");
    return power * std::norm(h + qh_dot(q, theta.entries())) / sigma2;
}

double arg_or_zero(CScalar v) {
    if (v == CScalar(0.0, 0.0))
        return 0.0;
    return std::arg(v);
}

} // namespace

double snr_user_phase1(const PowerBudget &pb, CScalar h_au, const CVec &q_u,
                       const PhaseVector &theta1) {
    return combined_snr(pb.p_a, pb.sigma2, h_au, q_u, theta1);
}

double snr_controller_phase1(const PowerBudget &pb, CScalar h_ac, const CVec &q_c,
                             const PhaseVector &theta1) {
    return combined_snr(pb.p_a, pb.sigma2, h_ac, q_c, theta1);
}

double snr_user_phase2(const PowerBudget &pb, CScalar g_cu, const CVec &q_tilde_u,
                       const PhaseVector &theta2) {
    return combined_snr(pb.p_c, pb.sigma2, g_cu, q_tilde_u, theta2);
}

PhaseVector align_phases(CScalar h, const CVec &q) {
    const double base = arg_or_zero(h);
    std::vector<double> phases(q.size());
    for (std::size_t m = 0; m < q.size(); ++m)
        phases[m] = base + arg_or_zero(q[m]);
    return PhaseVector::from_phases(phases);
}

RateBreakdown rate_breakdown(const PowerBudget &pb, const ChannelSet &cs,
                             const CascadedChannels &casc, const PhaseVector &theta1) {
    RateBreakdown rb;
    rb.rho_u = snr_user_phase1(pb, cs.h_au, casc.q_u, theta1);
    rb.rho_c = snr_controller_phase1(pb, cs.h_ac, casc.q_c, theta1);

    const double peak_u = std::abs(cs.h_au) + l1_norm(casc.q_u);
    const double peak_c = std::abs(cs.h_ac) + l1_norm(casc.q_c);
    const double peak_u2 = std::abs(cs.g_cu) + l1_norm(casc.q_tilde_u);
    rb.rho_u_star = pb.p_a * peak_u * peak_u / pb.sigma2;
    rb.rho_c_star = pb.p_a * peak_c * peak_c / pb.sigma2;
    rb.rho_u_tilde_star = pb.p_c * peak_u2 * peak_u2 / pb.sigma2;

    rb.r_u = std::log2(1.0 + rb.rho_u);
    rb.r_c = std::log2(1.0 + rb.rho_c);
    rb.r_u_tilde_star = std::log2(1.0 + rb.rho_u_tilde_star);
    rb.c2_star = std::log2(1.0 + rb.rho_u_star);
    return rb;
}

double rate_c1(double r_u, double r_u_tilde_star, double r_c, double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw AlphaOutOfRangeError("rate_c1: alpha = " + std::to_string(alpha));
    return std::min(alpha * r_u + (1.0 - alpha) * r_u_tilde_star, alpha * r_c);
}

RateGap rate_gap(const RateBreakdown &rb, double r_u, double r_c, double alpha) {
    if (alpha < 0.0 || alpha > 1.0)
        throw AlphaOutOfRangeError("rate_gap: alpha = " + std::to_string(alpha));
    RateGap g;
    g.delta1 = alpha * (r_u - rb.r_u_tilde_star) + rb.r_u_tilde_star - rb.c2_star;
    g.delta2 = alpha * r_c - rb.c2_star;
    g.delta = std::min(g.delta1, g.delta2);
    return g;
}

} // namespace relay_irs
