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

#ifndef RELAY_IRS_NUMERICS_HPP
#define RELAY_IRS_NUMERICS_HPP

#include <complex>
#include <cstdint>
#include <vector>

#include "relay_irs/errors.hpp"

namespace relay_irs {

using CScalar = std::complex<double>;
using CVec = std::vector<CScalar>;

/// Dense complex matrix, row-major storage. General-purpose container for
/// eigenvector matrices, Cholesky factors and low-rank factors.
class CMat {
  public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    static CMat identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    CScalar &operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const CScalar &operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    CScalar *row_ptr(std::size_t i) { return data_.data() + i * cols_; }
    const CScalar *row_ptr(std::size_t i) const { return data_.data() + i * cols_; }

    const std::vector<CScalar> &data() const { return data_; }

  private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<CScalar> data_;
};

CVec matvec(const CMat &a, const CVec &x);

/// Hermitian matrix with the symmetry invariant enforced at construction:
/// entries(i,j) == conj(entries(j,i)) and real diagonal. Mutation through
/// set() writes both mirror entries.
class HermMatrix {
  public:
    explicit HermMatrix(std::size_t order) : mat_(order, order) {}

    /// Builds from a dense matrix; rejects asymmetry beyond `tol` elementwise
    /// and symmetrizes the representable remainder.
    static HermMatrix from_dense(const CMat &a, double tol = 1e-12);

    /// Rank-one v v^H.
    static HermMatrix outer(const CVec &v);

    std::size_t order() const { return mat_.rows(); }
    const CScalar &operator()(std::size_t i, std::size_t j) const { return mat_(i, j); }

    /// Writes (i,j) and the conjugate at (j,i); diagonal keeps the real part.
    void set(std::size_t i, std::size_t j, CScalar v);

    const CMat &dense() const { return mat_; }

  private:
    CMat mat_;
};

struct EigResult {
    std::vector<double> values; // ascending
    CMat vectors;               // column k pairs with values[k]
};

/// Full eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Throws NoConvergenceError if the sweep cap is exceeded.
EigResult herm_eig(const HermMatrix &h);

/// Cholesky factor L with L L^H = h + shift*I. A pivot below -1e-9 raises
/// NotPsdError; pivots in [-1e-9, 0] are clamped to zero (rank deficiency).
CMat cholesky_psd(const HermMatrix &h, double shift);

/// Counter-based pseudo-random stream: a 64-bit key plus an increment counter
/// pushed through the SplitMix64 finalizer. Identical seeds give bit-identical
/// sequences; substream(id) derives a statistically independent stream.
class RngStream {
  public:
    explicit RngStream(std::uint64_t seed);

    RngStream substream(std::uint64_t id) const;

    std::uint64_t next_u64();
    double next_unit(); // uniform in [0, 1)
    CScalar next_cn();  // circularly symmetric complex normal, E|x|^2 = 1

    std::uint64_t key() const { return key_; }

  private:
    RngStream(std::uint64_t key, int); // internal: key already mixed
    std::uint64_t key_ = 0;
    std::uint64_t counter_ = 0;
};

/// n i.i.d. CN(0,1) entries; rejects n == 0.
CVec sample_cn(RngStream &rng, std::size_t n);

// Small helpers shared across modules.

/// sum_m conj(q[m]) * x[m], i.e. q^H x.
CScalar qh_dot(const CVec &q, const CVec &x);

double l1_norm(const CVec &v);

/// Re(x^H b x) for Hermitian b.
double quad_form(const HermMatrix &b, const CVec &x);

/// Re(tr(b * psi)) for Hermitian b, psi.
double trace_product(const HermMatrix &b, const HermMatrix &psi);

void ensure_finite(const CVec &v, const char *what);
void ensure_finite(CScalar v, const char *what);

} // namespace relay_irs

#endif
