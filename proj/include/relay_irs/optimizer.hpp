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

#ifndef RELAY_IRS_OPTIMIZER_HPP
#define RELAY_IRS_OPTIMIZER_HPP

#include <limits>
#include <utility>
#include <vector>

#include "relay_irs/channel.hpp"
#include "relay_irs/numerics.hpp"
#include "relay_irs/rate.hpp"

namespace relay_irs {

/// The (M+1)x(M+1) Hermitian matrices of the semidefinite lifting,
///   b_u = [[q_u q_u^H, h_au q_u], [h_au^* q_u^H, 0]]
/// (b_c analogous), so that for theta_bar = [theta; 1]
///   theta_bar^H b_u theta_bar + |h_au|^2 == |h_au + q_u^H theta|^2.
/// The source channels are retained for cheap rank-one evaluations.
struct LiftedMatrices {
    HermMatrix b_u;
    HermMatrix b_c;
    CScalar h_au{};
    CScalar h_ac{};
    CVec q_u;
    CVec q_c;

    LiftedMatrices() : b_u(0), b_c(0) {}
    std::size_t elements() const { return q_u.size(); } // M
    std::size_t order() const { return q_u.size() + 1; }
};

LiftedMatrices build_lifted(CScalar h_au, const CVec &q_u, CScalar h_ac, const CVec &q_c);

/// Solver knobs. Defaults are sized for desk-scale arrays (M up to a few
/// hundred); bm_rank 0 resolves to ceil(sqrt(M+1)) + 1.
struct AOConfig {
    double bisection_eps = 1e-4;     // bps/Hz accuracy of the bisection search
    int max_ao_iters = 30;
    double ao_rate_tol = 1e-4;       // bps/Hz convergence threshold
    int randomization_count = 200;
    int bm_rank = 0;
    int bm_max_iters = 2000;
    double bm_step_init = 0.2;       // step length relative to unit row norm
    double bm_step_shrink = 0.5;
    double bm_step_grow = 1.1;
    double bm_obj_tol = 1e-10;       // relative smoothed-objective improvement
    double feasibility_slack_tol = 1e-7;
    bool use_prop1_shortcut = true;  // verify suites disable this to exercise AO

    void validate() const;
    int resolve_rank(std::size_t order) const;
};

enum class Mode { Relaying, Conventional };

const char *mode_name(Mode m);

/// Joint solution of the time-allocation / passive-reflection problem.
/// Conventional mode always carries alpha = 1 and rate = C2*; Relaying mode
/// carries the achieved C1 with rho_C(theta1) > rho_U(theta1).
struct Solution {
    Mode mode = Mode::Conventional;
    PhaseVector theta1;
    PhaseVector theta2;
    double alpha = 1.0;
    double rate = 0.0;
    int iterations = 0;
    std::vector<double> rate_trace;   // per-iteration objective of the kept AO run
    double best_relaying_rate = 0.0;  // best C1 attempted, even if Conventional won
};

struct FeasResult {
    bool feasible = false;
    HermMatrix psi;        // witness, unit diagonal, PSD by construction
    double achieved_slack = 0.0;

    FeasResult() : psi(0) {}
};

/// Optimal Phase-1 time fraction for fixed theta1:
/// alpha* = r~* / (r_c + r~* - r_u). Requires r_c > r_u and r~* > r_u,
/// otherwise throws PreconditionViolatedError (caller falls back to the
/// conventional mode).
double optimal_alpha(double r_u, double r_c, double r_u_tilde_star);

/// Sufficient condition for the relaying mode to be useless:
/// min{rho~_U*, rho_C*} <= rho_U*.
bool check_prop1(const RateBreakdown &rb);

/// Sufficient condition for the relaying mode to win at the supplied theta1:
/// rho~_U* > rho_U* and r_c > (r~* - r_u) / (r~* - C2*) * C2*.
bool check_prop2(const RateBreakdown &rb, double r_u_at_theta1, double r_c_at_theta1);

struct ElliptopeResult {
    CMat v_factor;   // (M+1) x rank, rows of unit Euclidean norm
    double slack = 0.0; // exact min of the two constraint slacks at v_factor
    bool improved = false;
};

/// Maximizes min{tr(b_u V V^H) + |h_au|^2 - c_u, tr(b_c V V^H) + |h_ac|^2 - c_c}
/// over unit-row-norm factors V by smoothed-min projected gradient ascent
/// with temperature annealing. Psi = V V^H has unit diagonal and is PSD by
/// construction. Stops early once the exact slack reaches early_stop_slack.
ElliptopeResult elliptope_maxmin(const LiftedMatrices &lm, double c_u, double c_c,
                                 const AOConfig &cfg, const CMat *warm_start = nullptr,
                                 double early_stop_slack = std::numeric_limits<double>::infinity());

/// Feasibility of (P3.2) at rate target delta for fixed alpha. Thresholds:
///   c_u(delta) = (sigma^2/P_A) (2^{delta/alpha - ((1-alpha)/alpha) r~*} - 1)
///   c_c(delta) = (sigma^2/P_A) (2^{delta/alpha} - 1)
/// Feasible iff the best found slack >= -feasibility_slack_tol.
FeasResult sdp_feasible(double delta, double alpha, const LiftedMatrices &lm,
                        const RateBreakdown &rb, const PowerBudget &pb, const AOConfig &cfg);

/// Bisection over delta in [0, min{alpha*log2(1+rho_C*),
/// alpha*C2* + (1-alpha) r~*}]; returns the largest feasible delta found and
/// its witness.
std::pair<double, HermMatrix> bisection_p31(double alpha, const LiftedMatrices &lm,
                                            const RateBreakdown &rb, const PowerBudget &pb,
                                            const AOConfig &cfg);

/// Rank-one recovery from a lifted witness: samples xi ~ CN(0, psi), forms
/// theta = e^{j angle(xi_{1:M} / xi_{M+1})}, adds the dominant-eigenvector and
/// both closed-form candidates, and returns the best under C1(theta, alpha).
PhaseVector gaussian_randomization(const HermMatrix &psi, double alpha, const RateBreakdown &rb,
                                   const PowerBudget &pb, const LiftedMatrices &lm,
                                   const AOConfig &cfg, RngStream &rng);

/// Alternating optimization for the joint problem, run from both closed-form
/// initial reflections, with the conventional mode as universal fallback.
Solution ao_solve(const ChannelSet &cs, const CascadedChannels &casc, const PowerBudget &pb,
                  const AOConfig &cfg, RngStream &rng);

/// Exhaustive oracle over the phase grid x alpha grid (M <= 4 only; M = 0
/// reduces to the closed-form relay/direct comparison).
Solution brute_force_p1(const ChannelSet &cs, const CascadedChannels &casc, const PowerBudget &pb,
                        std::size_t phase_grid_points, std::size_t alpha_grid_points);

} // namespace relay_irs

#endif
