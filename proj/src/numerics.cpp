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

#include "relay_irs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace relay_irs {

CMat CMat::identity(std::size_t n) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1.0;
    return m;
}

CVec matvec(const CMat &a, const CVec &x) {
    if (a.cols() != x.size())
        throw DimensionMismatchError("matvec: matrix has " + std::to_string(a.cols()) +
                                     " columns, vector has " + std::to_string(x.size()));
    CVec y(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        CScalar acc = 0.0;
        const CScalar *row = a.row_ptr(i);
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += row[j] * x[j];
        y[i] = acc;
    }
    return y;
}

HermMatrix HermMatrix::from_dense(const CMat &a, double tol) {
    if (a.rows() != a.cols())
        throw NonHermitianError("from_dense: matrix is not square");
    HermMatrix h(a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        if (std::abs(a(i, i).imag()) > tol)
            throw NonHermitianError("from_dense: diagonal entry has imaginary part " +
                                    std::to_string(a(i, i).imag()));
        if (!std::isfinite(a(i, i).real()) || !std::isfinite(a(i, i).imag()))
            throw NonHermitianError("from_dense: non-finite entry");
        h.mat_(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < a.cols(); ++j) {
            const CScalar upper = a(i, j);
            const CScalar lower = a(j, i);
            if (!std::isfinite(upper.real()) || !std::isfinite(upper.imag()) ||
                !std::isfinite(lower.real()) || !std::isfinite(lower.imag()))
                throw NonHermitianError("from_dense: non-finite entry");
            if (std::abs(upper - std::conj(lower)) > tol)
                throw NonHermitianError("from_dense: asymmetry at (" + std::to_string(i) + "," +
                                        std::to_string(j) + ")");
            const CScalar v = 0.5 * (upper + std::conj(lower));
            h.mat_(i, j) = v;
            h.mat_(j, i) = std::conj(v);
        }
    }
    return h;
}

HermMatrix HermMatrix::outer(const CVec &v) {
    HermMatrix h(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        h.mat_(i, i) = std::norm(v[i]);
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            const CScalar e = v[i] * std::conj(v[j]);
            h.mat_(i, j) = e;
            h.mat_(j, i) = std::conj(e);
        }
    }
    return h;
}

void HermMatrix::set(std::size_t i, std::size_t j, CScalar v) {
    if (i == j) {
        mat_(i, i) = v.real();
    } else {
        mat_(i, j) = v;
        mat_(j, i) = std::conj(v);
    }
}

namespace {

double off_diagonal_norm(const CMat &a) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                s += std::norm(a(i, j));
    return std::sqrt(s);
}

} // namespace

EigResult herm_eig(const HermMatrix &h) {
    const std::size_t n = h.order();
    CMat a = h.dense();
    CMat v = CMat::identity(n);

    if (n == 0)
        return {{}, v};
    if (n == 1)
        return {{a(0, 0).real()}, v};

    double frob = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            frob += std::norm(a(i, j));
    frob = std::sqrt(frob);
    const double stop = std::max(frob * 1e-15, 1e-300);

    constexpr int kMaxSweeps = 64;
    int sweep = 0;
    while (off_diagonal_norm(a) > stop) {
        if (++sweep > kMaxSweeps)
            throw NoConvergenceError("herm_eig: Jacobi sweeps exceeded " +
                                     std::to_string(kMaxSweeps));
        for (std::size_t p = 0; p < n - 1; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const CScalar apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag <= stop / static_cast<double>(n))
                    continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double phi = std::arg(apq);
                // Zero the (p,q) entry with a complex Jacobi rotation:
                // tan(theta) solves t^2 + 2*tau*t - 1 = 0, tau = (app-aqq)/(2|apq|).
                const double tau = (app - aqq) / (2.0 * mag);
                double t;
                if (tau >= 0.0)
                    t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                else
                    t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const CScalar eip = std::polar(1.0, phi);
                const CScalar ein = std::conj(eip);

                // Columns: A <- A * G with G(p,p)=c, G(q,p)=s*e^{-j phi},
                // G(p,q)=-s*e^{j phi}, G(q,q)=c.
                for (std::size_t k = 0; k < n; ++k) {
                    const CScalar akp = a(k, p);
                    const CScalar akq = a(k, q);
                    a(k, p) = c * akp + s * ein * akq;
                    a(k, q) = -s * eip * akp + c * akq;
                }
                // Rows: A <- G^H * A.
                for (std::size_t k = 0; k < n; ++k) {
                    const CScalar apk = a(p, k);
                    const CScalar aqk = a(q, k);
                    a(p, k) = c * apk + s * eip * aqk;
                    a(q, k) = -s * ein * apk + c * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                // Accumulate eigenvectors: V <- V * G.
                for (std::size_t k = 0; k < n; ++k) {
                    const CScalar vkp = v(k, p);
                    const CScalar vkq = v(k, q);
                    v(k, p) = c * vkp + s * ein * vkq;
                    v(k, q) = -s * eip * vkp + c * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(),
              [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigResult r;
    r.values.resize(n);
    r.vectors = CMat(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        r.values[k] = a(idx[k], idx[k]).real();
        for (std::size_t i = 0; i < n; ++i)
            r.vectors(i, k) = v(i, idx[k]);
    }
    return r;
}

CMat cholesky_psd(const HermMatrix &h, double shift) {
    if (shift < 0.0)
        throw std::invalid_argument("cholesky_psd: negative shift");
    const std::size_t n = h.order();
    CMat l(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        double pivot = h(j, j).real() + shift;
        for (std::size_t k = 0; k < j; ++k)
            pivot -= std::norm(l(j, k));
        if (pivot < -1e-9)
            throw NotPsdError("cholesky_psd: pivot " + std::to_string(pivot) + " at column " +
                              std::to_string(j));
        const double ljj = std::sqrt(std::max(pivot, 0.0));
        l(j, j) = ljj;
        for (std::size_t i = j + 1; i < n; ++i) {
            CScalar acc = h(i, j);
            for (std::size_t k = 0; k < j; ++k)
                acc -= l(i, k) * std::conj(l(j, k));
            l(i, j) = (ljj > 0.0) ? acc / ljj : CScalar(0.0);
        }
    }
    return l;
}

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

std::uint64_t splitmix64(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
}

} // namespace

RngStream::RngStream(std::uint64_t seed) : key_(splitmix64(seed + kGolden)) {}

RngStream::RngStream(std::uint64_t key, int) : key_(key) {}

RngStream RngStream::substream(std::uint64_t id) const {
    return RngStream(splitmix64(key_ ^ splitmix64(id + kGolden)), 0);
}

std::uint64_t RngStream::next_u64() {
    ++counter_;
    return splitmix64(key_ + counter_ * kGolden);
}

double RngStream::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

CScalar RngStream::next_cn() {
    // Box-Muller; u1 in (0,1] keeps the log finite.
    const double u1 = 1.0 - next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-std::log(u1));
    const double phi = 2.0 * M_PI * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

CVec sample_cn(RngStream &rng, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("sample_cn: n must be >= 1");
    CVec v(n);
    for (auto &x : v)
        x = rng.next_cn();
    return v;
}

CScalar qh_dot(const CVec &q, const CVec &x) {
    if (q.size() != x.size())
        throw DimensionMismatchError("qh_dot: length mismatch " + std::to_string(q.size()) +
                                     " vs " + std::to_string(x.size()));
    CScalar acc = 0.0;
    for (std::size_t i = 0; i < q.size(); ++i)
        acc += std::conj(q[i]) * x[i];
    return acc;
}

double l1_norm(const CVec &v) {
    double s = 0.0;
    for (const auto &x : v)
        s += std::abs(x);
    return s;
}

double quad_form(const HermMatrix &b, const CVec &x) {
    if (b.order() != x.size())
        throw DimensionMismatchError("quad_form: order mismatch");
    CScalar acc = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        CScalar row = 0.0;
        for (std::size_t j = 0; j < x.size(); ++j)
            row += b(i, j) * x[j];
        acc += std::conj(x[i]) * row;
    }
    return acc.real();
}

double trace_product(const HermMatrix &b, const HermMatrix &psi) {
    if (b.order() != psi.order())
        throw DimensionMismatchError("trace_product: order mismatch");
    CScalar acc = 0.0;
    for (std::size_t i = 0; i < b.order(); ++i)
        for (std::size_t j = 0; j < b.order(); ++j)
            acc += b(i, j) * psi(j, i);
    return acc.real();
}

void ensure_finite(CScalar v, const char *what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw std::invalid_argument(std::string(what) + ": non-finite value");
}

void ensure_finite(const CVec &v, const char *what) {
    for (const auto &x : v)
        ensure_finite(x, what);
}

} // namespace relay_irs
