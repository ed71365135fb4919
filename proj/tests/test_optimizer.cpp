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

#include <doctest.h>

#include <cmath>

#include "relay_irs/optimizer.hpp"
#include "relay_irs/verify.hpp"

using namespace relay_irs;

namespace {

PowerBudget unit_pb() {
    return PowerBudget{1.0, 1.0, 1.0, 1.0};
}

RateBreakdown breakdown_at_ustar(const ChannelSet &cs, const CascadedChannels &casc,
                                 const PowerBudget &pb) {
    return rate_breakdown(pb, cs, casc, align_phases(cs.h_au, casc.q_u));
}

// Exhaustive max-min slack over rank-one lifted candidates on a phase grid.
double grid_maxmin_slack(const LiftedMatrices &lm, double c_u, double c_c, std::size_t grid) {
    const std::size_t m = lm.elements();
    REQUIRE(m == 2);
    double best = -std::numeric_limits<double>::infinity();
    const double dphi = 2.0 * M_PI / static_cast<double>(grid);
    for (std::size_t a = 0; a < grid; ++a)
        for (std::size_t b = 0; b < grid; ++b)
            for (std::size_t c = 0; c < grid; ++c) {
                CVec bar = {std::polar(1.0, dphi * a), std::polar(1.0, dphi * b),
                            std::polar(1.0, dphi * c)};
                const double fu = quad_form(lm.b_u, bar) + std::norm(lm.h_au) - c_u;
                const double fc = quad_form(lm.b_c, bar) + std::norm(lm.h_ac) - c_c;
                best = std::max(best, std::min(fu, fc));
            }
    return best;
}

// Exhaustive C1(theta, alpha) over a phase grid (the (P3.1) objective).
double grid_c1_optimum(const ChannelSet &cs, const CascadedChannels &casc, const PowerBudget &pb,
                       double alpha, std::size_t grid) {
    const std::size_t m = cs.element_count();
    REQUIRE(m == 2);
    const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
    double best = 0.0;
    const double dphi = 2.0 * M_PI / static_cast<double>(grid);
    for (std::size_t a = 0; a < grid; ++a)
        for (std::size_t b = 0; b < grid; ++b) {
            const PhaseVector theta = PhaseVector::from_phases({dphi * a, dphi * b});
            const double ru = std::log2(1.0 + snr_user_phase1(pb, cs.h_au, casc.q_u, theta));
            const double rc =
                std::log2(1.0 + snr_controller_phase1(pb, cs.h_ac, casc.q_c, theta));
            best = std::max(best, rate_c1(ru, rb.r_u_tilde_star, rc, alpha));
        }
    return best;
}

} // namespace

TEST_CASE("optimal_alpha: closed form equals the grid maximizer") {
    SUBCASE("triple (1, 3, 2)") {
        const double a = optimal_alpha(1.0, 3.0, 2.0);
        CHECK(a == doctest::Approx(0.5));
        CHECK(rate_c1(1.0, 2.0, 3.0, a) == doctest::Approx(1.5));
    }
    SUBCASE("triple (0, 2, 2)") {
        const double a = optimal_alpha(0.0, 2.0, 2.0);
        CHECK(a == doctest::Approx(0.5));
        CHECK(rate_c1(0.0, 2.0, 2.0, a) == doctest::Approx(1.0));
    }
    SUBCASE("grid search confirms the maximizer") {
        const double triples[3][3] = {{1.0, 3.0, 2.0}, {0.0, 2.0, 2.0}, {0.7, 1.9, 4.2}};
        for (const auto &t : triples) {
            const double ru = t[0], rc = t[1], rt = t[2];
            const double a_star = optimal_alpha(ru, rc, rt);
            const double c_star = rate_c1(ru, rt, rc, a_star);
            double grid_best = 0.0;
            for (int i = 0; i <= 100000; ++i)
                grid_best = std::max(grid_best, rate_c1(ru, rt, rc, i * 1e-5));
            CHECK(grid_best <= c_star + 1e-9);
            CHECK(grid_best >= c_star - 1e-4);
        }
    }
    SUBCASE("boundary triples are rejected") {
        CHECK_THROWS_AS(optimal_alpha(2.0, 3.0, 2.0), PreconditionViolatedError);
        CHECK_THROWS_AS(optimal_alpha(2.0, 2.0, 3.0), PreconditionViolatedError);
    }
}

TEST_CASE("check_prop1: silent relay and strong-relay cases") {
    RateBreakdown rb;
    rb.rho_u_tilde_star = 0.0; // no controller power
    rb.rho_c_star = 5.0;
    rb.rho_u_star = 1.0;
    CHECK(check_prop1(rb));
    rb.rho_u_tilde_star = 4.0;
    rb.rho_c_star = 3.0;
    rb.rho_u_star = 1.0;
    CHECK_FALSE(check_prop1(rb));
}

TEST_CASE("check_prop2: threshold structure") {
    RateBreakdown rb;
    rb.rho_u_star = 2.0;
    rb.c2_star = std::log2(3.0);
    rb.rho_u_tilde_star = 1.0; // fails the first condition
    rb.r_u_tilde_star = std::log2(2.0);
    CHECK_FALSE(check_prop2(rb, 0.5, 10.0));

    rb.rho_u_tilde_star = 8.0;
    rb.r_u_tilde_star = std::log2(9.0);
    // At theta = theta_1,U*: r_u = C2*, threshold reduces to C2*.
    CHECK(check_prop2(rb, rb.c2_star, rb.c2_star + 0.1));
    CHECK_FALSE(check_prop2(rb, rb.c2_star, rb.c2_star - 0.1));
}

TEST_CASE("build_lifted: hand example at M = 1") {
    const CVec q = {CScalar(1.0, 0.0)};
    const LiftedMatrices lm = build_lifted(CScalar(1.0, 0.0), q, CScalar(0.0), q);
    const CVec bar = {CScalar(1.0, 0.0), CScalar(1.0, 0.0)};
    CHECK(quad_form(lm.b_u, bar) == doctest::Approx(3.0));
    CHECK(quad_form(lm.b_u, bar) + 1.0 == doctest::Approx(4.0)); // |1 + 1|^2
    // h = 0 leaves the border empty: pure reflected power.
    CHECK(std::abs(lm.b_c(0, 1)) == 0.0);
    CHECK(quad_form(lm.b_c, bar) == doctest::Approx(1.0));
}

TEST_CASE("build_lifted: identity holds on random instances") {
    RngStream rng(31);
    const CScalar h_au = rng.next_cn();
    const CScalar h_ac = rng.next_cn();
    const CVec q_u = sample_cn(rng, 4);
    const CVec q_c = sample_cn(rng, 4);
    const LiftedMatrices lm = build_lifted(h_au, q_u, h_ac, q_c);
    for (int k = 0; k < 100; ++k) {
        std::vector<double> ph(4);
        for (auto &p : ph)
            p = 2.0 * M_PI * rng.next_unit();
        const PhaseVector theta = PhaseVector::from_phases(ph);
        CVec bar = theta.entries();
        bar.push_back(CScalar(1.0, 0.0));
        const double want_u = std::norm(h_au + qh_dot(q_u, theta.entries()));
        const double want_c = std::norm(h_ac + qh_dot(q_c, theta.entries()));
        CHECK(std::abs(quad_form(lm.b_u, bar) + std::norm(h_au) - want_u) <=
              1e-12 * std::max(1.0, want_u));
        CHECK(std::abs(quad_form(lm.b_c, bar) + std::norm(h_ac) - want_c) <=
              1e-12 * std::max(1.0, want_c));
    }
    CHECK_THROWS_AS(build_lifted(h_au, q_u, h_ac, sample_cn(rng, 3)), DimensionMismatchError);
}

TEST_CASE("elliptope_maxmin: trivially feasible target has positive slack") {
    RngStream rng(32);
    const CVec q = sample_cn(rng, 3);
    const LiftedMatrices lm = build_lifted(CScalar(0.0), q, CScalar(0.0), q);
    const AOConfig cfg;
    const ElliptopeResult er = elliptope_maxmin(lm, 0.0, 0.0, cfg);
    CHECK(er.slack > 0.0);
    // rows of the factor stay unit norm
    for (std::size_t i = 0; i < er.v_factor.rows(); ++i) {
        double n2 = 0.0;
        for (std::size_t k = 0; k < er.v_factor.cols(); ++k)
            n2 += std::norm(er.v_factor(i, k));
        CHECK(n2 == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("elliptope_maxmin: never worse than the exhaustive rank-one grid") {
    RngStream rng(33);
    const AOConfig cfg;
    for (int inst = 0; inst < 4; ++inst) {
        const CScalar h_au = rng.next_cn();
        const CScalar h_ac = rng.next_cn();
        const CVec q_u = sample_cn(rng, 2);
        const CVec q_c = sample_cn(rng, 2);
        const LiftedMatrices lm = build_lifted(h_au, q_u, h_ac, q_c);
        // contention targets: halfway to each closed-form maximum
        const double peak_u = std::abs(h_au) + l1_norm(q_u);
        const double peak_c = std::abs(h_ac) + l1_norm(q_c);
        const double c_u = 0.5 * peak_u * peak_u;
        const double c_c = 0.5 * peak_c * peak_c;
        const ElliptopeResult er = elliptope_maxmin(lm, c_u, c_c, cfg);
        const double grid = grid_maxmin_slack(lm, c_u, c_c, 64);
        CHECK(er.slack >= grid - 1e-3 * std::max(1.0, std::abs(grid)));
    }
}

TEST_CASE("elliptope_maxmin: unattainable targets give negative slack") {
    RngStream rng(34);
    const CScalar h_au = rng.next_cn();
    const CScalar h_ac = rng.next_cn();
    const CVec q_u = sample_cn(rng, 2);
    const CVec q_c = sample_cn(rng, 2);
    const LiftedMatrices lm = build_lifted(h_au, q_u, h_ac, q_c);
    const double peak_u = std::abs(h_au) + l1_norm(q_u);
    const double peak_c = std::abs(h_ac) + l1_norm(q_c);
    const ElliptopeResult er =
        elliptope_maxmin(lm, 1.5 * peak_u * peak_u, 1.5 * peak_c * peak_c, AOConfig{});
    CHECK(er.slack < 0.0);
}

TEST_CASE("sdp_feasible: zero target is always feasible") {
    RngStream rng(35);
    const ChannelSet cs = random_instance(rng, 3);
    const CascadedChannels casc = cascade(cs);
    const PowerBudget pb = unit_pb();
    const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
    const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
    for (double alpha : {0.2, 0.5, 1.0}) {
        const FeasResult fr = sdp_feasible(0.0, alpha, lm, rb, pb, AOConfig{});
        CHECK(fr.feasible);
        // witness has unit diagonal
        for (std::size_t i = 0; i < fr.psi.order(); ++i)
            CHECK(fr.psi(i, i).real() == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(sdp_feasible(0.0, 0.0, lm, rb, pb, AOConfig{}), AlphaOutOfRangeError);
}

TEST_CASE("sdp_feasible: targets above the controller optimum are infeasible") {
    RngStream rng(36);
    const ChannelSet cs = random_instance(rng, 3);
    const CascadedChannels casc = cascade(cs);
    const PowerBudget pb = unit_pb();
    const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
    const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
    const double alpha = 0.6;
    const double delta = alpha * rb.r_c_star() + 0.05;
    const FeasResult fr = sdp_feasible(delta, alpha, lm, rb, pb, AOConfig{});
    CHECK_FALSE(fr.feasible);
    CHECK(fr.achieved_slack < 0.0);

    // achieved_slack is the exact min constraint slack of the witness
    const double inv = pb.sigma2 / pb.p_a;
    const double c_u =
        inv * (std::exp2(delta / alpha - (1.0 - alpha) / alpha * rb.r_u_tilde_star) - 1.0);
    const double c_c = inv * (std::exp2(delta / alpha) - 1.0);
    const double slack_u = trace_product(lm.b_u, fr.psi) + std::norm(cs.h_au) - c_u;
    const double slack_c = trace_product(lm.b_c, fr.psi) + std::norm(cs.h_ac) - c_c;
    CHECK(fr.achieved_slack ==
          doctest::Approx(std::min(slack_u, slack_c)).epsilon(1e-6));
}

TEST_CASE("bisection_p31: symmetric constraints recover the closed form") {
    RngStream rng(37);
    ChannelSet cs = random_instance(rng, 3);
    // make the controller channel identical to the user channel
    cs.h_ac = cs.h_au;
    cs.h_ic = cs.g_iu;
    const CascadedChannels casc = cascade(cs);
    const PowerBudget pb = unit_pb();
    const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
    const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
    const AOConfig cfg;
    const auto [delta_star, psi] = bisection_p31(1.0, lm, rb, pb, cfg);
    const double want = std::log2(1.0 + rb.rho_u_star);
    CHECK(delta_star <= want + 1e-12);
    CHECK(delta_star >= want - cfg.bisection_eps);
    CHECK(psi.order() == 4);
}

TEST_CASE("bisection_p31: stays inside the bracket and near the grid oracle") {
    RngStream rng(38);
    const AOConfig cfg;
    const PowerBudget pb = unit_pb();
    for (int inst = 0; inst < 4; ++inst) {
        const ChannelSet cs = random_instance(rng, 2);
        const CascadedChannels casc = cascade(cs);
        const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
        const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
        const double alpha = 0.4 + 0.2 * inst;
        const auto [delta_star, psi] = bisection_p31(alpha, lm, rb, pb, cfg);
        const double top =
            std::min(alpha * rb.r_c_star(), alpha * rb.c2_star + (1.0 - alpha) * rb.r_u_tilde_star);
        CHECK(delta_star <= top + 1e-12);
        const double grid = grid_c1_optimum(cs, casc, pb, alpha, 64);
        // never materially below the rank-one grid; at most the discretization
        // and relaxation allowance above it
        CHECK(delta_star >= grid - 2.0 * cfg.bisection_eps);
        CHECK(delta_star <= grid + 0.02 * std::max(1.0, grid) + 2.0 * cfg.bisection_eps);
    }
}

TEST_CASE("bisection_p31: witnesses have unit diagonal and are PSD") {
    RngStream rng(45);
    const PowerBudget pb = unit_pb();
    const AOConfig cfg;
    for (int inst = 0; inst < 3; ++inst) {
        const ChannelSet cs = random_instance(rng, 3);
        const CascadedChannels casc = cascade(cs);
        const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
        const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
        const auto [delta_star, psi] = bisection_p31(0.5, lm, rb, pb, cfg);
        (void)delta_star;
        for (std::size_t i = 0; i < psi.order(); ++i)
            CHECK(std::abs(psi(i, i).real() - 1.0) <= 1e-9);
        const EigResult e = herm_eig(psi);
        CHECK(e.values.front() >= -1e-9 * std::max(e.values.back(), 1e-30));
    }
}

TEST_CASE("ao_solve: the reference geometry at d0 = 90 prefers relaying") {
    Geometry g;
    g.irs_rows = 4;
    g.irs_cols = 4;
    FadingSpec f;
    PowerBudget pb;
    pb.p_a = pb.p_c = pb.p_max = std::pow(10.0, 0.8);
    pb.sigma2 = 1e-5;
    const AOConfig cfg;
    RngStream rng(2026);
    int relayed = 0;
    const int n = 12;
    for (int i = 0; i < n; ++i) {
        RngStream draw = rng.substream(i);
        const ChannelSet cs = draw_channel_set(draw, g, f, 90.0);
        const CascadedChannels casc = cascade(cs);
        RngStream solver = rng.substream(1000 + i);
        const Solution sol = ao_solve(cs, casc, pb, cfg, solver);
        if (sol.mode == Mode::Relaying)
            ++relayed;
    }
    CHECK(relayed >= n - 2);
}

TEST_CASE("gaussian_randomization: exact rank-one witness is recovered") {
    RngStream rng(39);
    const ChannelSet cs = random_instance(rng, 3);
    const CascadedChannels casc = cascade(cs);
    const PowerBudget pb = unit_pb();
    const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
    const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);

    std::vector<double> ph(3);
    for (auto &p : ph)
        p = 2.0 * M_PI * rng.next_unit();
    const PhaseVector planted = PhaseVector::from_phases(ph);
    CVec bar = planted.entries();
    bar.push_back(CScalar(1.0, 0.0));
    const HermMatrix psi = HermMatrix::outer(bar);

    const double alpha = 0.55;
    RngStream solver = rng.substream(9);
    const PhaseVector got = gaussian_randomization(psi, alpha, rb, pb, lm, AOConfig{}, solver);

    const auto c1_of = [&](const PhaseVector &th) {
        const double ru = std::log2(1.0 + snr_user_phase1(pb, cs.h_au, casc.q_u, th));
        const double rc = std::log2(1.0 + snr_controller_phase1(pb, cs.h_ac, casc.q_c, th));
        return rate_c1(ru, rb.r_u_tilde_star, rc, alpha);
    };
    CHECK(c1_of(got) >= c1_of(planted) - 1e-9);
    for (const auto &e : got.entries())
        CHECK(std::abs(std::abs(e) - 1.0) <= 1e-15);
}

TEST_CASE("gaussian_randomization: near-optimal against the 1-D grid") {
    RngStream rng(40);
    const PowerBudget pb = unit_pb();
    const AOConfig cfg;
    for (int inst = 0; inst < 5; ++inst) {
        const ChannelSet cs = random_instance(rng, 1);
        const CascadedChannels casc = cascade(cs);
        const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
        const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);
        const double alpha = 0.5;
        const auto [delta_star, psi] = bisection_p31(alpha, lm, rb, pb, cfg);
        (void)delta_star;
        RngStream solver = rng.substream(100 + inst);
        const PhaseVector got = gaussian_randomization(psi, alpha, rb, pb, lm, cfg, solver);

        const auto c1_of = [&](const PhaseVector &th) {
            const double ru = std::log2(1.0 + snr_user_phase1(pb, cs.h_au, casc.q_u, th));
            const double rc = std::log2(1.0 + snr_controller_phase1(pb, cs.h_ac, casc.q_c, th));
            return rate_c1(ru, rb.r_u_tilde_star, rc, alpha);
        };
        double grid_best = 0.0;
        for (int k = 0; k < 4096; ++k)
            grid_best = std::max(
                grid_best, c1_of(PhaseVector::from_phases({2.0 * M_PI * k / 4096.0})));
        CHECK(c1_of(got) >= 0.999 * grid_best);
    }
}

TEST_CASE("ao_solve: Proposition-1 short circuit returns Conventional") {
    RngStream rng(41);
    ChannelSet cs = random_instance(rng, 3);
    // silence the relay path
    cs.g_cu = CScalar(0.0);
    for (auto &x : cs.h_ic)
        x = CScalar(0.0);
    const CascadedChannels casc = cascade(cs);
    const PowerBudget pb = unit_pb();
    const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
    REQUIRE(check_prop1(rb));
    RngStream solver(1);
    const Solution sol = ao_solve(cs, casc, pb, AOConfig{}, solver);
    CHECK(sol.mode == Mode::Conventional);
    CHECK(sol.alpha == 1.0);
    CHECK(sol.rate == rb.c2_star);
}

TEST_CASE("ao_solve: matches the brute-force oracle at M = 2") {
    RngStream rng(42);
    const PowerBudget pb = unit_pb();
    const AOConfig cfg;
    int good = 0;
    for (int inst = 0; inst < 10; ++inst) {
        const ChannelSet cs = random_instance(rng, 2);
        const CascadedChannels casc = cascade(cs);
        RngStream solver = rng.substream(inst);
        const Solution sol = ao_solve(cs, casc, pb, cfg, solver);
        const Solution oracle = brute_force_p1(cs, casc, pb, 64, 1001);
        const double ratio = oracle.rate > 0.0 ? sol.rate / oracle.rate : 1.0;
        if (ratio >= 0.95)
            ++good;
        CHECK(ratio >= 0.90);
    }
    CHECK(good >= 9);
}

TEST_CASE("ao_solve: relaying solutions honour the mode contract") {
    RngStream rng(43);
    const PowerBudget pb = unit_pb();
    const AOConfig cfg;
    int relayed = 0;
    for (int inst = 0; inst < 30; ++inst) {
        const ChannelSet cs = random_instance(rng, 4, 3.0);
        const CascadedChannels casc = cascade(cs);
        const RateBreakdown rb = breakdown_at_ustar(cs, casc, pb);
        RngStream solver = rng.substream(500 + inst);
        const Solution sol = ao_solve(cs, casc, pb, cfg, solver);
        CHECK(ao_contract_violation(sol, rb).empty());
        if (sol.mode == Mode::Relaying) {
            ++relayed;
            CHECK(sol.rate > rb.c2_star);
            CHECK(sol.alpha > 0.0);
            CHECK(sol.alpha < 1.0);
            const double rho_u = snr_user_phase1(pb, cs.h_au, casc.q_u, sol.theta1);
            const double rho_c = snr_controller_phase1(pb, cs.h_ac, casc.q_c, sol.theta1);
            CHECK(rho_c > rho_u);
            // the reported rate is exactly reproducible from theta1 and alpha
            const double c1 = rate_c1(std::log2(1.0 + rho_u), rb.r_u_tilde_star,
                                      std::log2(1.0 + rho_c), sol.alpha);
            CHECK(sol.rate == doctest::Approx(c1).epsilon(1e-12));
        } else {
            CHECK(sol.rate == rb.c2_star);
            CHECK(sol.alpha == 1.0);
        }
        // theta2 is always the closed-form Phase-2 alignment
        const PhaseVector t2 = align_phases(cs.g_cu, casc.q_tilde_u);
        for (std::size_t m = 0; m < t2.size(); ++m)
            CHECK(std::abs(sol.theta2.entries()[m] - t2.entries()[m]) <= 1e-15);
    }
    CHECK(relayed > 0); // the boosted generator must reach the relaying regime
}

TEST_CASE("brute_force_p1: M = 0 reduces to the scalar relay closed form") {
    ChannelSet cs;
    cs.h_au = CScalar(1.0, 0.0);  // rho_U = 1,   R_U = 1
    cs.h_ac = CScalar(0.0, 3.0);  // rho_C = 9
    cs.g_cu = CScalar(2.0, 0.0);  // rho~ = 4
    PowerBudget pb = unit_pb();
    const CascadedChannels casc = cascade(cs);
    const Solution sol = brute_force_p1(cs, casc, pb, 1, 2);
    const double ru = 1.0;
    const double rc = std::log2(10.0);
    const double rt = std::log2(5.0);
    const double alpha = optimal_alpha(ru, rc, rt);
    const double c1 = rate_c1(ru, rt, rc, alpha);
    REQUIRE(c1 > ru); // relaying wins here
    CHECK(sol.mode == Mode::Relaying);
    CHECK(sol.alpha == doctest::Approx(alpha));
    CHECK(sol.rate == doctest::Approx(c1));
    CHECK(sol.theta1.size() == 0);
}

TEST_CASE("brute_force_p1: M = 1 grid matches the conventional closed form") {
    ChannelSet cs;
    cs.h_au = CScalar(2.0, 0.0);
    cs.h_ai = {CScalar(1.0, 0.0)};
    cs.g_iu = {CScalar(1.0, 0.0)};
    cs.h_ic = {CScalar(0.0, 0.0)};
    cs.h_ac = CScalar(0.0);
    cs.g_cu = CScalar(0.0);
    const CascadedChannels casc = cascade(cs);
    const Solution sol = brute_force_p1(cs, casc, unit_pb(), 256, 11);
    CHECK(sol.mode == Mode::Conventional);
    CHECK(sol.rate == doctest::Approx(std::log2(1.0 + 9.0))); // (2 + 1)^2
}

TEST_CASE("brute_force_p1: rejects M > 4") {
    RngStream rng(44);
    const ChannelSet cs = random_instance(rng, 5);
    const CascadedChannels casc = cascade(cs);
    CHECK_THROWS_AS(brute_force_p1(cs, casc, unit_pb(), 8, 11), TooLargeError);
}
