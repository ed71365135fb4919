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

#include <algorithm>
#include <cmath>
#include <complex>

#include "relay_irs/numerics.hpp"

using namespace relay_irs;

namespace {

HermMatrix random_hermitian(RngStream &rng, std::size_t n) {
    HermMatrix h(n);
    for (std::size_t i = 0; i < n; ++i) {
        h.set(i, i, 2.0 * rng.next_unit() - 1.0);
        for (std::size_t j = i + 1; j < n; ++j)
            h.set(i, j, rng.next_cn());
    }
    return h;
}

HermMatrix random_psd(RngStream &rng, std::size_t n) {
    CMat g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            g(i, j) = rng.next_cn();
    HermMatrix h(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            CScalar acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += g(i, k) * std::conj(g(j, k));
            h.set(i, j, acc);
        }
    return h;
}

double reconstruction_error(const HermMatrix &h, const EigResult &e) {
    const std::size_t n = h.order();
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            CScalar acc = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                acc += e.vectors(i, k) * e.values[k] * std::conj(e.vectors(j, k));
            worst = std::max(worst, std::abs(acc - h(i, j)));
        }
    return worst;
}

double unitarity_error(const CMat &v) {
    const std::size_t n = v.rows();
    double worst = 0.0;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            CScalar acc = 0.0;
            for (std::size_t i = 0; i < n; ++i)
                acc += std::conj(v(i, a)) * v(i, b);
            worst = std::max(worst, std::abs(acc - (a == b ? 1.0 : 0.0)));
        }
    return worst;
}

double max_abs_eig(const EigResult &e) {
    double m = 0.0;
    for (double v : e.values)
        m = std::max(m, std::abs(v));
    return m;
}

// Independent eigenvalue oracle for order <= 4: characteristic polynomial
// coefficients by Faddeev-LeVerrier, roots by Durand-Kerner.
std::vector<double> charpoly_eigenvalues(const HermMatrix &h) {
    const std::size_t n = h.order();
    REQUIRE(n <= 4);
    // p(x) = x^n + c[n-1] x^{n-1} + ... + c[0]
    std::vector<CScalar> c(n + 1, CScalar(0.0));
    c[n] = 1.0;
    CMat m = CMat::identity(n);
    for (std::size_t k = 1; k <= n; ++k) {
        CMat hm(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                CScalar acc = 0.0;
                for (std::size_t l = 0; l < n; ++l)
                    acc += h(i, l) * m(l, j);
                hm(i, j) = acc;
            }
        CScalar tr = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            tr += hm(i, i);
        const CScalar coef = -tr / static_cast<double>(k);
        c[n - k] = coef;
        m = hm;
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) += coef;
    }
    // Durand-Kerner iteration.
    std::vector<CScalar> roots(n);
    for (std::size_t i = 0; i < n; ++i)
        roots[i] = std::pow(CScalar(0.4, 0.9), static_cast<double>(i + 1));
    const auto poly = [&](CScalar x) {
        CScalar acc = c[n];
        for (std::size_t k = n; k-- > 0;)
            acc = acc * x + c[k];
        return acc;
    };
    for (int it = 0; it < 500; ++it) {
        double shift = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            CScalar denom = 1.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i)
                    denom *= roots[i] - roots[j];
            const CScalar d = poly(roots[i]) / denom;
            roots[i] -= d;
            shift = std::max(shift, std::abs(d));
        }
        if (shift < 1e-14)
            break;
    }
    std::vector<double> vals(n);
    for (std::size_t i = 0; i < n; ++i)
        vals[i] = roots[i].real(); // Hermitian: imaginary parts vanish
    std::sort(vals.begin(), vals.end());
    return vals;
}

} // namespace

TEST_CASE("herm_eig: identity of order 3") {
    HermMatrix h(3);
    for (std::size_t i = 0; i < 3; ++i)
        h.set(i, i, 1.0);
    const EigResult e = herm_eig(h);
    for (double v : e.values)
        CHECK(v == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(reconstruction_error(h, e) <= 1e-12);
    CHECK(unitarity_error(e.vectors) <= 1e-12);
}

TEST_CASE("herm_eig: diagonal matrix keeps its entries, ascending") {
    HermMatrix h(3);
    h.set(0, 0, -1.0);
    h.set(1, 1, 0.0);
    h.set(2, 2, 2.0);
    const EigResult e = herm_eig(h);
    CHECK(e.values[0] == doctest::Approx(-1.0));
    CHECK(e.values[1] == doctest::Approx(0.0));
    CHECK(e.values[2] == doctest::Approx(2.0));
}

TEST_CASE("herm_eig: random order-8 reconstruction") {
    RngStream rng(42);
    const HermMatrix h = random_hermitian(rng, 8);
    const EigResult e = herm_eig(h);
    CHECK(reconstruction_error(h, e) <= 1e-9 * 8 * std::max(max_abs_eig(e), 1e-30));
    CHECK(unitarity_error(e.vectors) <= 1e-9);
    const bool ascending = std::is_sorted(e.values.begin(), e.values.end());
    CHECK(ascending);
}

TEST_CASE("herm_eig: cross-validated against the characteristic polynomial at order <= 4") {
    RngStream rng(7);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = 2 + trial % 3; // 2, 3, 4
        const HermMatrix h = random_hermitian(rng, n);
        const EigResult e = herm_eig(h);
        const std::vector<double> oracle = charpoly_eigenvalues(h);
        const double scale = std::max(max_abs_eig(e), 1.0);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(std::abs(e.values[i] - oracle[i]) <= 1e-8 * scale);
    }
}

TEST_CASE("herm_eig: 100 random Hermitian matrices up to order 32") {
    RngStream rng(11);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.next_u64() % 32;
        const HermMatrix h = random_hermitian(rng, n);
        const EigResult e = herm_eig(h);
        CHECK(reconstruction_error(h, e) <=
              1e-9 * static_cast<double>(n) * std::max(max_abs_eig(e), 1e-30));
        CHECK(unitarity_error(e.vectors) <= 1e-9);
    }
}

TEST_CASE("HermMatrix::from_dense rejects asymmetry and keeps valid input") {
    CMat a(2, 2);
    a(0, 0) = 1.0;
    a(1, 1) = 2.0;
    a(0, 1) = CScalar(0.0, 1.0);
    a(1, 0) = CScalar(0.0, 1.0); // should be -i
    CHECK_THROWS_AS(HermMatrix::from_dense(a), NonHermitianError);
    a(1, 0) = CScalar(0.0, -1.0);
    const HermMatrix h = HermMatrix::from_dense(a);
    CHECK(h(0, 1) == CScalar(0.0, 1.0));
    CHECK(h(1, 0) == CScalar(0.0, -1.0));
}

TEST_CASE("cholesky_psd: identity and diagonal cases") {
    HermMatrix eye(3);
    for (std::size_t i = 0; i < 3; ++i)
        eye.set(i, i, 1.0);
    const CMat l = cholesky_psd(eye, 0.0);
    for (std::size_t i = 0; i < 3; ++i)
        CHECK(l(i, i).real() == doctest::Approx(1.0));

    HermMatrix two(2);
    two.set(0, 0, 2.0);
    two.set(1, 1, 2.0);
    const CMat l2 = cholesky_psd(two, 0.0);
    CHECK(l2(0, 0).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(l2(1, 1).real() == doctest::Approx(std::sqrt(2.0)));
    CHECK(std::abs(l2(1, 0)) == doctest::Approx(0.0));
}

TEST_CASE("cholesky_psd: rank-one plus shift reproduces the input") {
    const CVec v = {CScalar(1.0, 0.0), CScalar(0.0, 1.0)};
    const HermMatrix h = HermMatrix::outer(v);
    const double shift = 1e-8;
    const CMat l = cholesky_psd(h, shift);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            CScalar acc = 0.0;
            for (std::size_t k = 0; k < 2; ++k)
                acc += l(i, k) * std::conj(l(j, k));
            const CScalar want = h(i, j) + (i == j ? shift : 0.0);
            CHECK(std::abs(acc - want) <= 1e-9);
        }
}

TEST_CASE("cholesky_psd: negative pivot raises NotPsdError") {
    HermMatrix h(1);
    h.set(0, 0, -1.0);
    CHECK_THROWS_AS(cholesky_psd(h, 0.0), NotPsdError);
}

TEST_CASE("cholesky_psd: 100 random PSD matrices round-trip") {
    RngStream rng(13);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + rng.next_u64() % 12;
        const HermMatrix h = random_psd(rng, n);
        const CMat l = cholesky_psd(h, 0.0);
        double trace = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            trace += h(i, i).real();
        const double tol = 1e-9 * static_cast<double>(n) * std::max(trace, 1.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                CScalar acc = 0.0;
                for (std::size_t k = 0; k < n; ++k)
                    acc += l(i, k) * std::conj(l(j, k));
                CHECK(std::abs(acc - h(i, j)) <= tol);
            }
    }
}

TEST_CASE("sample_cn: rejects n = 0") {
    RngStream rng(1);
    CHECK_THROWS_AS(sample_cn(rng, 0), std::invalid_argument);
}

TEST_CASE("sample_cn: identical seeds give bit-identical streams") {
    RngStream a(999);
    RngStream b(999);
    const CVec va = sample_cn(a, 4);
    const CVec vb = sample_cn(b, 4);
    for (std::size_t i = 0; i < 4; ++i) {
        CHECK(va[i].real() == vb[i].real());
        CHECK(va[i].imag() == vb[i].imag());
    }
    RngStream c(1000);
    const CVec vc = sample_cn(c, 4);
    bool same = true;
    for (std::size_t i = 0; i < 4; ++i)
        same = same && va[i] == vc[i];
    CHECK_FALSE(same);
}

TEST_CASE("sample_cn: unit mean power over 1e5 draws") {
    RngStream rng(2024);
    const std::size_t n = 100000;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += std::norm(rng.next_cn());
    CHECK(acc / static_cast<double>(n) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("RngStream substreams are distinct and reproducible") {
    RngStream root(5);
    RngStream s1 = root.substream(1);
    RngStream s2 = root.substream(2);
    RngStream s1b = RngStream(5).substream(1);
    CHECK(s1.next_u64() == s1b.next_u64());
    CHECK(s1.next_u64() != s2.next_u64());
}
