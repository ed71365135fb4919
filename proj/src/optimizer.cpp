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

#include "relay_irs/optimizer.hpp"

#include <algorithm>
#include <cmath>

namespace relay_irs {

const char *mode_name(Mode m) {
    return m == Mode::Relaying ? "Relaying" : "Conventional";
}

LiftedMatrices build_lifted(CScalar h_au, const CVec &q_u, CScalar h_ac, const CVec &q_c) {
    if (q_u.size() != q_c.size())
        throw DimensionMismatchError("build_lifted: q_u and q_c lengths differ");
    const std::size_t m = q_u.size();
    LiftedMatrices lm;
    lm.h_au = h_au;
    lm.h_ac = h_ac;
    lm.q_u = q_u;
    lm.q_c = q_c;
    lm.b_u = HermMatrix(m + 1);
    lm.b_c = HermMatrix(m + 1);
    for (std::size_t i = 0; i < m; ++i) {
        lm.b_u.set(i, i, std::norm(q_u[i]));
        lm.b_c.set(i, i, std::norm(q_c[i]));
        for (std::size_t j = i + 1; j < m; ++j) {
            lm.b_u.set(i, j, q_u[i] * std::conj(q_u[j]));
            lm.b_c.set(i, j, q_c[i] * std::conj(q_c[j]));
        }
        lm.b_u.set(i, m, h_au * q_u[i]);
        lm.b_c.set(i, m, h_ac * q_c[i]);
    }
    return lm;
}

void AOConfig::validate() const {
    if (!(bisection_eps > 0.0))
        throw ValidationError("solver: bisection_eps must be > 0");
    if (max_ao_iters < 1)
        throw ValidationError("solver: max_ao_iters must be >= 1");
    if (!(ao_rate_tol > 0.0))
        throw ValidationError("solver: ao_rate_tol must be > 0");
    if (randomization_count < 1)
        throw ValidationError("solver: randomization_count must be >= 1");
    if (bm_rank < 0)
        throw ValidationError("solver: bm_rank must be >= 0");
    if (bm_max_iters < 1)
        throw ValidationError("solver: bm_max_iters must be >= 1");
    if (!(bm_step_init > 0.0) || !(bm_step_shrink > 0.0) || bm_step_shrink >= 1.0 ||
        bm_step_grow < 1.0)
        throw ValidationError("solver: invalid bm step control");
    if (!(bm_obj_tol > 0.0))
        throw ValidationError("solver: bm_obj_tol must be > 0");
    if (!(feasibility_slack_tol > 0.0))
        throw ValidationError("solver: feasibility_slack_tol must be > 0");
}

int AOConfig::resolve_rank(std::size_t order) const {
    const int natural = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(order)))) + 1;
    const int r = (bm_rank > 0) ? bm_rank : natural;
    return std::min<int>(r, static_cast<int>(order));
}

double optimal_alpha(double r_u, double r_c, double r_u_tilde_star) {
    if (!(r_c > r_u))
        throw PreconditionViolatedError("optimal_alpha: requires r_c > r_u");
    if (!(r_u_tilde_star > r_u))
        throw PreconditionViolatedError("optimal_alpha: requires r_u_tilde_star > r_u");
    return r_u_tilde_star / (r_c + r_u_tilde_star - r_u);
}

bool check_prop1(const RateBreakdown &rb) {
    return std::min(rb.rho_u_tilde_star, rb.rho_c_star) <= rb.rho_u_star;
}

bool check_prop2(const RateBreakdown &rb, double r_u_at_theta1, double r_c_at_theta1) {
    if (!(rb.rho_u_tilde_star > rb.rho_u_star))
        return false;
    const double denom = rb.r_u_tilde_star - rb.c2_star;
    if (!(denom > 0.0))
        return false;
    const double threshold = (rb.r_u_tilde_star - r_u_at_theta1) / denom * rb.c2_star;
    return r_c_at_theta1 > threshold;
}

namespace {

// ---- low-rank elliptope machinery -------------------------------------

// W = B V for the bordered rank-one structure B = [[q q^H, h q],[h^* q^H, 0]].
// Writing t_k = q^H V_top(:,k) and s_k = t_k + h V(m,k):
//   W(i,k) = q[i] s_k for i < m,   W(m,k) = h^* t_k.
void structured_product(const CVec &q, CScalar h, const CMat &v, CMat &w) {
    const std::size_t m = q.size();
    const std::size_t r = v.cols();
    for (std::size_t k = 0; k < r; ++k) {
        CScalar t = 0.0;
        for (std::size_t j = 0; j < m; ++j)
            t += std::conj(q[j]) * v(j, k);
        const CScalar s = t + h * v(m, k);
        for (std::size_t i = 0; i < m; ++i)
            w(i, k) = q[i] * s;
        w(m, k) = std::conj(h) * t;
    }
}

double real_inner(const CMat &a, const CMat &b) {
    double s = 0.0;
    const auto &da = a.data();
    const auto &db = b.data();
    for (std::size_t i = 0; i < da.size(); ++i)
        s += da[i].real() * db[i].real() + da[i].imag() * db[i].imag();
    return s;
}

void normalize_rows(CMat &v) {
    for (std::size_t i = 0; i < v.rows(); ++i) {
        double n2 = 0.0;
        for (std::size_t k = 0; k < v.cols(); ++k)
            n2 += std::norm(v(i, k));
        if (n2 <= 0.0) {
            v(i, 0) = 1.0;
            for (std::size_t k = 1; k < v.cols(); ++k)
                v(i, k) = 0.0;
        } else {
            const double inv = 1.0 / std::sqrt(n2);
            for (std::size_t k = 0; k < v.cols(); ++k)
                v(i, k) *= inv;
        }
    }
}

CVec lift(const PhaseVector &theta) {
    CVec bar = theta.entries();
    bar.push_back(CScalar(1.0, 0.0));
    return bar;
}

// |h + q^H theta|^2 evaluated directly from the channels.
double gain_sq(CScalar h, const CVec &q, const CVec &theta) {
    return std::norm(h + qh_dot(q, theta));
}

HermMatrix psi_from_factor(const CMat &v) {
    const std::size_t n = v.rows();
    HermMatrix psi(n);
    for (std::size_t i = 0; i < n; ++i) {
        psi.set(i, i, 1.0); // rows are unit norm by construction
        for (std::size_t j = i + 1; j < n; ++j) {
            CScalar e = 0.0;
            for (std::size_t k = 0; k < v.cols(); ++k)
                e += v(i, k) * std::conj(v(j, k));
            psi.set(i, j, e);
        }
    }
    return psi;
}

struct SlackPair {
    double f_u = 0.0;
    double f_c = 0.0;
    double min() const { return std::min(f_u, f_c); }
};

SlackPair factor_slacks(const LiftedMatrices &lm, const CMat &v, double c_u, double c_c, CMat &w_u,
                        CMat &w_c) {
    structured_product(lm.q_u, lm.h_au, v, w_u);
    structured_product(lm.q_c, lm.h_ac, v, w_c);
    SlackPair s;
    s.f_u = real_inner(v, w_u) + std::norm(lm.h_au) - c_u;
    s.f_c = real_inner(v, w_c) + std::norm(lm.h_ac) - c_c;
    return s;
}

double smoothed_min(const SlackPair &s, double temp) {
    const double fmin = s.min();
    const double eu = std::exp(-(s.f_u - fmin) / temp);
    const double ec = std::exp(-(s.f_c - fmin) / temp);
    return fmin - temp * std::log(eu + ec);
}

} // namespace

ElliptopeResult elliptope_maxmin(const LiftedMatrices &lm, double c_u, double c_c,
                                 const AOConfig &cfg, const CMat *warm_start,
                                 double early_stop_slack) {
    const std::size_t n = lm.order();
    const std::size_t r = static_cast<std::size_t>(cfg.resolve_rank(n));

    const double peak_u = std::abs(lm.h_au) + l1_norm(lm.q_u);
    const double peak_c = std::abs(lm.h_ac) + l1_norm(lm.q_c);
    const double scale = std::max({peak_u * peak_u, peak_c * peak_c, 1e-300});

    // Initial factor: the better closed-form rank-one point in the first
    // column, small deterministic noise in the rest.
    CMat v(n, r);
    if (warm_start != nullptr && warm_start->rows() == n && warm_start->cols() == r) {
        v = *warm_start;
    } else {
        const PhaseVector theta_u = align_phases(lm.h_au, lm.q_u);
        const PhaseVector theta_c = align_phases(lm.h_ac, lm.q_c);
        const double su = std::min(gain_sq(lm.h_au, lm.q_u, theta_u.entries()) - c_u,
                                   gain_sq(lm.h_ac, lm.q_c, theta_u.entries()) - c_c);
        const double sc = std::min(gain_sq(lm.h_au, lm.q_u, theta_c.entries()) - c_u,
                                   gain_sq(lm.h_ac, lm.q_c, theta_c.entries()) - c_c);
        const CVec cand = lift(su >= sc ? theta_u : theta_c);
        RngStream init_rng(0x1F5EEDull);
        for (std::size_t i = 0; i < n; ++i) {
            v(i, 0) = cand[i];
            for (std::size_t k = 1; k < r; ++k)
                v(i, k) = 0.05 * init_rng.next_cn();
        }
        normalize_rows(v);
    }

    CMat w_u(n, r), w_c(n, r);
    SlackPair s = factor_slacks(lm, v, c_u, c_c, w_u, w_c);

    CMat v_best = v;
    double slack_best = s.min();
    const double slack_init = slack_best;

    if (slack_best >= early_stop_slack)
        return {v_best, slack_best, false};

    int iters_used = 0;
    double step = cfg.bm_step_init;
    CMat grad(n, r), v_try(n, r), wt_u(n, r), wt_c(n, r);

    for (double temp = 0.3 * scale; temp >= 1e-6 * scale && iters_used < cfg.bm_max_iters;
         temp *= 0.25) {
        double f_smooth = smoothed_min(s, temp);
        int stall = 0;
        while (stall < 3 && iters_used < cfg.bm_max_iters) {
            ++iters_used;
            // Softmin weights at the current temperature.
            const double fmin = s.min();
            const double eu = std::exp(-(s.f_u - fmin) / temp);
            const double ec = std::exp(-(s.f_c - fmin) / temp);
            const double wu = eu / (eu + ec);
            const double wc = ec / (eu + ec);
            // Ascent direction 2 (wu B_u + wc B_c) V, normalized to unit
            // Frobenius scale so the step length is geometry-only.
            double gnorm2 = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t k = 0; k < r; ++k) {
                    const CScalar g = 2.0 * (wu * w_u(i, k) + wc * w_c(i, k));
                    grad(i, k) = g;
                    gnorm2 += std::norm(g);
                }
            const double gnorm = std::sqrt(gnorm2);
            if (gnorm <= 1e-300)
                break;
            const double dirscale = std::sqrt(static_cast<double>(n)) / gnorm;

            bool accepted = false;
            double local_step = step;
            for (int bt = 0; bt < 25; ++bt) {
                for (std::size_t i = 0; i < n; ++i)
                    for (std::size_t k = 0; k < r; ++k)
                        v_try(i, k) = v(i, k) + local_step * dirscale * grad(i, k);
                normalize_rows(v_try);
                const SlackPair s_try = factor_slacks(lm, v_try, c_u, c_c, wt_u, wt_c);
                const double f_try = smoothed_min(s_try, temp);
                if (f_try > f_smooth) {
                    v = v_try;
                    s = s_try;
                    std::swap(w_u, wt_u);
                    std::swap(w_c, wt_c);
                    if (s.min() > slack_best) {
                        slack_best = s.min();
                        v_best = v;
                        if (slack_best >= early_stop_slack)
                            return {v_best, slack_best, slack_best > slack_init};
                    }
                    if (f_try - f_smooth < cfg.bm_obj_tol * scale)
                        ++stall;
                    else
                        stall = 0;
                    f_smooth = f_try;
                    step = local_step * cfg.bm_step_grow;
                    accepted = true;
                    break;
                }
                local_step *= cfg.bm_step_shrink;
            }
            if (!accepted) {
                step = std::max(step * cfg.bm_step_shrink, 1e-12);
                ++stall;
            }
        }
    }

    return {v_best, slack_best, slack_best > slack_init};
}

namespace {

struct FeasWorkspace {
    CMat warm;
    bool has_warm = false;
};

// Rate targets translated to channel-gain thresholds of (P3.1)/(P3.2).
struct GainThresholds {
    double c_u = 0.0;
    double c_c = 0.0;
};

GainThresholds gain_thresholds(double delta, double alpha, const RateBreakdown &rb,
                               const PowerBudget &pb) {
    const double inv = pb.sigma2 / pb.p_a;
    GainThresholds t;
    t.c_u = inv * (std::exp2(delta / alpha - (1.0 - alpha) / alpha * rb.r_u_tilde_star) - 1.0);
    t.c_c = inv * (std::exp2(delta / alpha) - 1.0);
    return t;
}

// polish = false runs a probing check: the factor solver may stop as soon as
// feasibility is certified. polish = true runs it to convergence so the
// witness is the balanced max-slack point, which is what the randomization
// needs to be informative.
FeasResult feasible_impl(double delta, double alpha, const LiftedMatrices &lm,
                         const RateBreakdown &rb, const PowerBudget &pb, const AOConfig &cfg,
                         FeasWorkspace *ws, bool polish) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw AlphaOutOfRangeError("sdp_feasible: alpha = " + std::to_string(alpha));
    if (delta < 0.0)
        throw std::invalid_argument("sdp_feasible: delta must be >= 0");

    const GainThresholds t = gain_thresholds(delta, alpha, rb, pb);
    const double tol = cfg.feasibility_slack_tol;

    // Per-constraint certificate: over the unit-diagonal PSD set,
    // tr(B Psi) + |h|^2 is bounded by (|h| + ||q||_1)^2 (entrywise triangle
    // inequality), which matches the rank-one maximum. If one threshold
    // exceeds its bound, no Psi can help.
    const double peak_u = std::abs(lm.h_au) + l1_norm(lm.q_u);
    const double peak_c = std::abs(lm.h_ac) + l1_norm(lm.q_c);
    const double cert = std::min(peak_u * peak_u - t.c_u, peak_c * peak_c - t.c_c);
    if (!polish && cert < -tol) {
        const PhaseVector theta_u = align_phases(lm.h_au, lm.q_u);
        const PhaseVector theta_c = align_phases(lm.h_ac, lm.q_c);
        FeasResult fr;
        fr.feasible = false;
        fr.achieved_slack = -std::numeric_limits<double>::infinity();
        const PhaseVector *best = &theta_u;
        for (const PhaseVector *th : {&theta_u, &theta_c}) {
            const double s = std::min(gain_sq(lm.h_au, lm.q_u, th->entries()) - t.c_u,
                                      gain_sq(lm.h_ac, lm.q_c, th->entries()) - t.c_c);
            if (s > fr.achieved_slack) {
                fr.achieved_slack = s;
                best = th;
            }
        }
        fr.psi = HermMatrix::outer(lift(*best));
        return fr;
    }

    const CMat *warm = (ws != nullptr && ws->has_warm) ? &ws->warm : nullptr;
    const double early_stop = polish ? std::numeric_limits<double>::infinity() : 0.0;
    ElliptopeResult er = elliptope_maxmin(lm, t.c_u, t.c_c, cfg, warm, early_stop);
    if (ws != nullptr) {
        ws->warm = er.v_factor;
        ws->has_warm = true;
    }

    FeasResult fr;
    fr.psi = psi_from_factor(er.v_factor);
    fr.achieved_slack = er.slack;
    fr.feasible = er.slack >= -tol;
    return fr;
}

} // namespace

FeasResult sdp_feasible(double delta, double alpha, const LiftedMatrices &lm,
                        const RateBreakdown &rb, const PowerBudget &pb, const AOConfig &cfg) {
    return feasible_impl(delta, alpha, lm, rb, pb, cfg, nullptr, true);
}

std::pair<double, HermMatrix> bisection_p31(double alpha, const LiftedMatrices &lm,
                                            const RateBreakdown &rb, const PowerBudget &pb,
                                            const AOConfig &cfg) {
    if (!(alpha > 0.0) || alpha > 1.0)
        throw AlphaOutOfRangeError("bisection_p31: alpha = " + std::to_string(alpha));

    FeasWorkspace ws;
    double lo = 0.0; // always feasible: c_c(0) = 0 and c_u(0) <= 0

    // Both constraints are individually capped by their closed-form optima,
    // which caps the achievable delta.
    const double hi_c = alpha * std::log2(1.0 + rb.rho_c_star);
    const double hi_u = alpha * rb.c2_star + (1.0 - alpha) * rb.r_u_tilde_star;
    double hi = std::max(std::min(hi_c, hi_u), 0.0);

    while (hi - lo > cfg.bisection_eps) {
        const double mid = 0.5 * (lo + hi);
        const FeasResult fr = feasible_impl(mid, alpha, lm, rb, pb, cfg, &ws, false);
        if (fr.feasible)
            lo = mid;
        else
            hi = mid;
    }

    // Converged witness at the kept delta for the randomization stage.
    const FeasResult fin = feasible_impl(lo, alpha, lm, rb, pb, cfg, &ws, true);
    return {lo, fin.psi};
}

namespace {

// Dominant eigenvector by power iteration; psi is PSD so this converges to
// the top eigenspace. Deterministic start from the largest-norm column.
CVec dominant_eigenvector(const HermMatrix &psi) {
    const std::size_t n = psi.order();
    CVec v(n);
    std::size_t pick = 0;
    double best = -1.0;
    for (std::size_t j = 0; j < n; ++j) {
        double c = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            c += std::norm(psi(i, j));
        if (c > best) {
            best = c;
            pick = j;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        v[i] = psi(i, pick);
    double prev_rq = 0.0;
    for (int it = 0; it < 200; ++it) {
        double norm2 = 0.0;
        for (const auto &x : v)
            norm2 += std::norm(x);
        if (norm2 <= 0.0) {
            v.assign(n, CScalar(0.0));
            v[0] = 1.0;
            norm2 = 1.0;
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (auto &x : v)
            x *= inv;
        CVec w(n, CScalar(0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                w[i] += psi(i, j) * v[j];
        double rq = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            rq += (std::conj(v[i]) * w[i]).real();
        v = std::move(w);
        if (it > 2 && std::abs(rq - prev_rq) <= 1e-12 * std::max(1.0, std::abs(rq)))
            break;
        prev_rq = rq;
    }
    return v;
}

PhaseVector phases_relative_to_last(const CVec &xi) {
    const std::size_t m = xi.size() - 1;
    const double ref = (xi[m] == CScalar(0.0)) ? 0.0 : std::arg(xi[m]);
    std::vector<double> ph(m);
    for (std::size_t i = 0; i < m; ++i)
        ph[i] = ((xi[i] == CScalar(0.0)) ? 0.0 : std::arg(xi[i])) - ref;
    return PhaseVector::from_phases(ph);
}

} // namespace

PhaseVector gaussian_randomization(const HermMatrix &psi, double alpha, const RateBreakdown &rb,
                                   const PowerBudget &pb, const LiftedMatrices &lm,
                                   const AOConfig &cfg, RngStream &rng) {
    if (psi.order() != lm.order())
        throw DimensionMismatchError("gaussian_randomization: psi order does not match channels");
    if (!(alpha > 0.0) || alpha > 1.0)
        throw AlphaOutOfRangeError("gaussian_randomization: alpha = " + std::to_string(alpha));
    const std::size_t n = psi.order();

    const auto c1_of = [&](const PhaseVector &th) {
        const double ru = std::log2(1.0 + pb.p_a * gain_sq(lm.h_au, lm.q_u, th.entries()) / pb.sigma2);
        const double rc = std::log2(1.0 + pb.p_a * gain_sq(lm.h_ac, lm.q_c, th.entries()) / pb.sigma2);
        return rate_c1(ru, rb.r_u_tilde_star, rc, alpha);
    };

    PhaseVector best = align_phases(lm.h_au, lm.q_u);
    double best_c1 = c1_of(best);
    const auto consider = [&](const PhaseVector &th) {
        const double c1 = c1_of(th);
        if (c1 > best_c1) {
            best_c1 = c1;
            best = th;
        }
    };

    consider(align_phases(lm.h_ac, lm.q_c));
    consider(phases_relative_to_last(dominant_eigenvector(psi)));

    const CMat l = cholesky_psd(psi, 1e-9);
    for (int k = 0; k < cfg.randomization_count; ++k) {
        const CVec w = sample_cn(rng, n);
        CVec xi(n, CScalar(0.0));
        for (std::size_t i = 0; i < n; ++i) {
            CScalar acc = 0.0;
            for (std::size_t j = 0; j <= i; ++j)
                acc += l(i, j) * w[j];
            xi[i] = acc;
        }
        consider(phases_relative_to_last(xi));
    }
    return best;
}

namespace {

struct AoAttempt {
    bool valid = false;
    PhaseVector theta1;
    double alpha = 1.0;
    double rate = -std::numeric_limits<double>::infinity();
    std::vector<double> trace;
};

AoAttempt run_ao_from(const PhaseVector &init, const LiftedMatrices &lm, const RateBreakdown &rb,
                      const PowerBudget &pb, const AOConfig &cfg, RngStream &rng) {
    AoAttempt at;
    PhaseVector theta = init;
    double prev_c1 = -std::numeric_limits<double>::infinity();

    const auto rates_at = [&](const PhaseVector &th) {
        const double ru = std::log2(
            1.0 + pb.p_a * std::norm(lm.h_au + qh_dot(lm.q_u, th.entries())) / pb.sigma2);
        const double rc = std::log2(
            1.0 + pb.p_a * std::norm(lm.h_ac + qh_dot(lm.q_c, th.entries())) / pb.sigma2);
        return std::pair<double, double>{ru, rc};
    };
    // Time-allocation step. Where the Eq.-(18) preconditions hold the
    // intersection point is optimal; otherwise the piecewise-linear min is
    // maximized at the alpha = 1 boundary (the relaying constraint is
    // relaxed inside the iteration, as in (P3)).
    const auto alpha_step = [&](double ru, double rc) {
        if (rc > ru && rb.r_u_tilde_star > ru) {
            const double alpha = optimal_alpha(ru, rc, rb.r_u_tilde_star);
            return std::pair<double, double>{alpha, rate_c1(ru, rb.r_u_tilde_star, rc, alpha)};
        }
        return std::pair<double, double>{1.0, std::min(ru, rc)};
    };

    for (int iter = 0; iter < cfg.max_ao_iters; ++iter) {
        const auto [ru, rc] = rates_at(theta);
        const auto [alpha, c1] = alpha_step(ru, rc);
        at.trace.push_back(c1);
        at.valid = true;
        at.theta1 = theta;
        at.alpha = alpha;
        at.rate = c1;

        if (c1 - prev_c1 < cfg.ao_rate_tol && iter > 0)
            break;
        prev_c1 = c1;

        auto [delta_star, psi] = bisection_p31(alpha, lm, rb, pb, cfg);
        (void)delta_star;
        const PhaseVector cand = gaussian_randomization(psi, alpha, rb, pb, lm, cfg, rng);
        const auto [ru_new, rc_new] = rates_at(cand);
        const double c1_new = rate_c1(ru_new, rb.r_u_tilde_star, rc_new, alpha);
        if (c1_new > rate_c1(ru, rb.r_u_tilde_star, rc, alpha))
            theta = cand; // otherwise the incumbent stays; the trace never drops
    }
    return at;
}

} // namespace

Solution ao_solve(const ChannelSet &cs, const CascadedChannels &casc, const PowerBudget &pb,
                  const AOConfig &cfg, RngStream &rng) {
    cfg.validate();
    pb.validate();

    const PhaseVector theta_u_star = align_phases(cs.h_au, casc.q_u);
    const PhaseVector theta_c_star = align_phases(cs.h_ac, casc.q_c);
    const PhaseVector theta2 = align_phases(cs.g_cu, casc.q_tilde_u);
    const RateBreakdown rb = rate_breakdown(pb, cs, casc, theta_u_star);

    Solution conv;
    conv.mode = Mode::Conventional;
    conv.theta1 = theta_u_star;
    conv.theta2 = theta2;
    conv.alpha = 1.0;
    conv.rate = rb.c2_star;

    if (cfg.use_prop1_shortcut && check_prop1(rb))
        return conv;
    if (std::abs(cs.h_ac) + l1_norm(casc.q_c) == 0.0)
        return conv; // controller unreachable; Eq.-(18) precondition can never hold

    const LiftedMatrices lm = build_lifted(cs.h_au, casc.q_u, cs.h_ac, casc.q_c);

    AoAttempt best;
    for (const PhaseVector *init : {&theta_c_star, &theta_u_star}) {
        AoAttempt at = run_ao_from(*init, lm, rb, pb, cfg, rng);
        if (at.valid && at.rate > best.rate)
            best = std::move(at);
    }

    if (best.valid) {
        conv.best_relaying_rate = best.rate;
        conv.rate_trace = best.trace;
        conv.iterations = static_cast<int>(best.trace.size());
    }
    // Relaying needs a genuine two-phase split: an alpha = 1 iterate is
    // conventional operation and cannot truly beat C2* (its min(r_u, r_c)
    // may exceed the closed form only by rounding noise).
    if (!best.valid || best.alpha >= 1.0 || !(best.rate > rb.c2_star))
        return conv;

    Solution sol;
    sol.mode = Mode::Relaying;
    sol.theta1 = best.theta1;
    sol.theta2 = theta2;
    sol.alpha = best.alpha;
    sol.rate = best.rate;
    sol.iterations = static_cast<int>(best.trace.size());
    sol.rate_trace = std::move(best.trace);
    sol.best_relaying_rate = sol.rate;
    return sol;
}

Solution brute_force_p1(const ChannelSet &cs, const CascadedChannels &casc, const PowerBudget &pb,
                        std::size_t phase_grid_points, std::size_t alpha_grid_points) {
    const std::size_t m = cs.element_count();
    if (m > 4)
        throw TooLargeError("brute_force_p1: M = " + std::to_string(m) + " exceeds 4");
    if (phase_grid_points < 1 || alpha_grid_points < 2)
        throw std::invalid_argument("brute_force_p1: need >= 1 phase and >= 2 alpha grid points");
    pb.validate();

    const PhaseVector theta2 = align_phases(cs.g_cu, casc.q_tilde_u);
    const PhaseVector theta_u_star = align_phases(cs.h_au, casc.q_u);
    const RateBreakdown rb = rate_breakdown(pb, cs, casc, theta_u_star);

    Solution sol;
    sol.mode = Mode::Conventional;
    sol.theta1 = theta_u_star;
    sol.theta2 = theta2;
    sol.alpha = 1.0;
    sol.rate = rb.c2_star;

    double best_relay = -std::numeric_limits<double>::infinity();
    PhaseVector best_theta;
    double best_alpha = 0.0;

    if (m == 0) {
        // No IRS: scalar decode-and-forward relay with the closed-form split.
        const double ru = rb.r_u;
        const double rc = rb.r_c;
        const double rt = rb.r_u_tilde_star;
        if (rc > ru && rt > ru) {
            const double alpha = optimal_alpha(ru, rc, rt);
            best_relay = rate_c1(ru, rt, rc, alpha);
            best_alpha = alpha;
        }
    } else {
        std::vector<std::size_t> idx(m, 0);
        const double dphi = 2.0 * M_PI / static_cast<double>(phase_grid_points);
        std::vector<double> phases(m, 0.0);
        bool done = false;
        while (!done) {
            for (std::size_t i = 0; i < m; ++i)
                phases[i] = dphi * static_cast<double>(idx[i]);
            const PhaseVector theta = PhaseVector::from_phases(phases);
            const double rho_u = snr_user_phase1(pb, cs.h_au, casc.q_u, theta);
            const double rho_c = snr_controller_phase1(pb, cs.h_ac, casc.q_c, theta);
            if (rho_c > rho_u) {
                const double ru = std::log2(1.0 + rho_u);
                const double rc = std::log2(1.0 + rho_c);
                for (std::size_t a = 0; a < alpha_grid_points; ++a) {
                    const double alpha =
                        static_cast<double>(a) / static_cast<double>(alpha_grid_points - 1);
                    const double c1 = rate_c1(ru, rb.r_u_tilde_star, rc, alpha);
                    if (c1 > best_relay) {
                        best_relay = c1;
                        best_theta = theta;
                        best_alpha = alpha;
                    }
                }
            }
            // odometer increment
            std::size_t pos = 0;
            while (pos < m) {
                if (++idx[pos] < phase_grid_points)
                    break;
                idx[pos] = 0;
                ++pos;
            }
            done = (pos == m);
        }
    }

    sol.best_relaying_rate = std::max(best_relay, 0.0);
    if (best_relay > rb.c2_star) {
        sol.mode = Mode::Relaying;
        sol.theta1 = best_theta;
        sol.alpha = best_alpha;
        sol.rate = best_relay;
    }
    sol.rate_trace = {sol.rate};
    return sol;
}

} // namespace relay_irs
