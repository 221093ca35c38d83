// Copyright 2026 The qsdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numeric>
#include <span>
#include <sstream>
#include <vector>

#include "qsdp/error.hpp"

namespace qsdp {

using Complex = std::complex<double>;
using Index = Eigen::Index;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

inline bool all_finite(const ComplexMatrix& m) {
    for (Index j = 0; j < m.cols(); ++j)
        for (Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

inline void require_square(const ComplexMatrix& m, const char* what) {
    if (m.rows() != m.cols()) {
        std::ostringstream os;
        os << what << ": expected a square matrix, got " << m.rows() << "x" << m.cols();
        throw DimensionError(os.str());
    }
}

inline double max_abs(const ComplexMatrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline double hermiticity_residual(const ComplexMatrix& m) {
    return max_abs(m - m.adjoint());
}

inline ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    return 0.5 * (m + m.adjoint());
}

/// Kronecker product; (a (x) b)[i*rb + k, j*cb + l] = a[i,j] * b[k,l].
inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Index i = 0; i < a.rows(); ++i)
        for (Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline ComplexMatrix identity(Index d) { return ComplexMatrix::Identity(d, d); }

/// Ordered subsystem dimensions of a composite space. The rightmost subsystem
/// varies fastest in the composite index.
class SystemDims {
public:
    SystemDims() = default;
    SystemDims(std::initializer_list<Index> dims) : SystemDims(std::vector<Index>(dims)) {}
    explicit SystemDims(std::vector<Index> dims) : dims_(std::move(dims)) {
        for (Index d : dims_)
            if (d < 1) throw DimensionError("SystemDims: every subsystem dimension must be >= 1");
    }

    /// n copies of the same dimension.
    static SystemDims uniform(Index d, std::size_t n) { return SystemDims(std::vector<Index>(n, d)); }

    std::size_t size() const noexcept { return dims_.size(); }
    Index operator[](std::size_t k) const { return dims_.at(k); }
    const std::vector<Index>& values() const noexcept { return dims_; }

    Index total() const {
        return std::accumulate(dims_.begin(), dims_.end(), Index{1}, std::multiplies<>());
    }

    /// Stride of subsystem k in the composite index.
    Index stride(std::size_t k) const {
        Index s = 1;
        for (std::size_t j = k + 1; j < dims_.size(); ++j) s *= dims_[j];
        return s;
    }

    std::vector<Index> digits(Index composite) const {
        std::vector<Index> out(dims_.size());
        for (std::size_t k = dims_.size(); k-- > 0;) {
            out[k] = composite % dims_[k];
            composite /= dims_[k];
        }
        return out;
    }

    Index compose(std::span<const Index> digits) const {
        Index idx = 0;
        for (std::size_t k = 0; k < dims_.size(); ++k) idx = idx * dims_[k] + digits[k];
        return idx;
    }

    void require_matches(const ComplexMatrix& m, const char* what) const {
        if (m.rows() != total() || m.cols() != total()) {
            std::ostringstream os;
            os << what << ": subsystem dimensions multiply to " << total() << " but operator is "
               << m.rows() << "x" << m.cols();
            throw DimensionError(os.str());
        }
    }

    friend bool operator==(const SystemDims&, const SystemDims&) = default;

private:
    std::vector<Index> dims_;
};

namespace detail {

inline std::vector<bool> subsystem_mask(const SystemDims& dims, std::span<const std::size_t> which,
                                        const char* what) {
    std::vector<bool> mask(dims.size(), false);
    for (std::size_t k : which) {
        if (k >= dims.size()) {
            std::ostringstream os;
            os << what << ": subsystem index " << k << " out of range for " << dims.size()
               << " subsystems";
            throw DimensionError(os.str());
        }
        mask[k] = true;
    }
    return mask;
}

}  // namespace detail

/// Trace over every subsystem not listed in `keep`. The kept subsystems stay in
/// their original order.
inline ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemDims& dims,
                                   std::span<const std::size_t> keep) {
    dims.require_matches(m, "partial_trace");
    const auto mask = detail::subsystem_mask(dims, keep, "partial_trace");
    const Index n = dims.total();
    std::vector<Index> kept(n), traced(n);
    Index kept_dim = 1;
    for (std::size_t k = 0; k < dims.size(); ++k)
        if (mask[k]) kept_dim *= dims[k];
    for (Index full = 0; full < n; ++full) {
        const auto dg = dims.digits(full);
        Index a = 0, b = 0;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (mask[k])
                a = a * dims[k] + dg[k];
            else
                b = b * dims[k] + dg[k];
        }
        kept[full] = a;
        traced[full] = b;
    }
    ComplexMatrix out = ComplexMatrix::Zero(kept_dim, kept_dim);
    for (Index j = 0; j < n; ++j)
        for (Index i = 0; i < n; ++i)
            if (traced[i] == traced[j]) out(kept[i], kept[j]) += m(i, j);
    return out;
}

inline ComplexMatrix partial_trace(const ComplexMatrix& m, const SystemDims& dims,
                                   std::initializer_list<std::size_t> keep) {
    return partial_trace(m, dims, std::span<const std::size_t>(keep.begin(), keep.size()));
}

/// Transpose, in the standard basis, of the listed subsystems.
inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemDims& dims,
                                       std::span<const std::size_t> which) {
    dims.require_matches(m, "partial_transpose");
    const auto mask = detail::subsystem_mask(dims, which, "partial_transpose");
    const Index n = dims.total();
    std::vector<std::vector<Index>> dg(n);
    for (Index i = 0; i < n; ++i) dg[i] = dims.digits(i);
    ComplexMatrix out(n, n);
    std::vector<Index> r(dims.size()), c(dims.size());
    for (Index j = 0; j < n; ++j) {
        for (Index i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < dims.size(); ++k) {
                r[k] = mask[k] ? dg[j][k] : dg[i][k];
                c[k] = mask[k] ? dg[i][k] : dg[j][k];
            }
            out(dims.compose(r), dims.compose(c)) = m(i, j);
        }
    }
    return out;
}

inline ComplexMatrix partial_transpose(const ComplexMatrix& m, const SystemDims& dims,
                                       std::initializer_list<std::size_t> which) {
    return partial_transpose(m, dims, std::span<const std::size_t>(which.begin(), which.size()));
}

/// Permutation of composite basis indices that exchanges subsystems i and j.
inline std::vector<Index> subsystem_swap_permutation(const SystemDims& dims, std::size_t i,
                                                     std::size_t j) {
    if (i >= dims.size() || j >= dims.size())
        throw DimensionError("subsystem swap: index out of range");
    if (dims[i] != dims[j]) throw DimensionError("subsystem swap: subsystems differ in dimension");
    const Index n = dims.total();
    std::vector<Index> perm(n);
    for (Index idx = 0; idx < n; ++idx) {
        auto dg = dims.digits(idx);
        std::swap(dg[i], dg[j]);
        perm[idx] = dims.compose(dg);
    }
    return perm;
}

/// The operator exchanging subsystems i and j and acting as identity elsewhere.
inline ComplexMatrix subsystem_swap_operator(const SystemDims& dims, std::size_t i, std::size_t j) {
    const auto perm = subsystem_swap_permutation(dims, i, j);
    const Index n = dims.total();
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (Index idx = 0; idx < n; ++idx) p(perm[idx], idx) = 1.0;
    return p;
}

/// P m P for the subsystem swap P (an involution), without forming P.
inline ComplexMatrix conjugate_by_subsystem_swap(const ComplexMatrix& m, const SystemDims& dims,
                                                 std::size_t i, std::size_t j) {
    dims.require_matches(m, "conjugate_by_subsystem_swap");
    const auto perm = subsystem_swap_permutation(dims, i, j);
    const Index n = dims.total();
    ComplexMatrix out(n, n);
    for (Index c = 0; c < n; ++c)
        for (Index r = 0; r < n; ++r) out(perm[r], perm[c]) = m(r, c);
    return out;
}

/// S|i>|j> = |j>|i> on C^d (x) C^d.
inline ComplexMatrix swap_operator(Index d) {
    if (d < 1) throw DomainError("swap_operator: d must be >= 1");
    return subsystem_swap_operator(SystemDims{d, d}, 0, 1);
}

/// Eigenvalues (ascending) of the Hermitian part of m.
inline RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigenvalues");
    if (m.rows() == 0) return RealVector();
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

struct HermitianEigen {
    RealVector values;      // ascending
    ComplexMatrix vectors;  // columns
};

inline HermitianEigen hermitian_eigen(const ComplexMatrix& m) {
    require_square(m, "hermitian_eigen");
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(hermitian_part(m));
    return {es.eigenvalues(), es.eigenvectors()};
}

inline double min_eigenvalue(const ComplexMatrix& m) {
    const RealVector ev = hermitian_eigenvalues(m);
    return ev.size() ? ev(0) : 0.0;
}

inline double max_eigenvalue(const ComplexMatrix& m) {
    const RealVector ev = hermitian_eigenvalues(m);
    return ev.size() ? ev(ev.size() - 1) : 0.0;
}

/// Apply f to the eigenvalues of a Hermitian matrix.
template <typename F>
ComplexMatrix hermitian_function(const ComplexMatrix& m, F&& f) {
    const auto eig = hermitian_eigen(m);
    RealVector fv = eig.values.unaryExpr(std::forward<F>(f));
    return eig.vectors * fv.asDiagonal() * eig.vectors.adjoint();
}

/// Square root of a PSD matrix; eigenvalues below zero are clamped.
inline ComplexMatrix psd_sqrt(const ComplexMatrix& m) {
    return hermitian_function(m, [](double x) { return std::sqrt(std::max(x, 0.0)); });
}

inline RealVector singular_values(const ComplexMatrix& m) {
    if (m.size() == 0) return RealVector();
    Eigen::JacobiSVD<ComplexMatrix> svd(m);
    return svd.singularValues();
}

/// Sum of singular values.
inline double trace_norm(const ComplexMatrix& m) { return singular_values(m).sum(); }

/// Largest eigenvalue of a Hermitian matrix: the least mu with h <= mu I.
inline double infinity_norm(const ComplexMatrix& h) {
    require_square(h, "infinity_norm");
    return max_eigenvalue(h);
}

inline Index numerical_rank(const ComplexMatrix& m, double tol) {
    const RealVector sv = singular_values(m);
    return static_cast<Index>((sv.array() > tol).count());
}

/// Row-major vectorization: vec(m)[i*cols + j] = m(i, j).
inline ComplexVector vec_rows(const ComplexMatrix& m) {
    ComplexVector v(m.size());
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) v(i * m.cols() + j) = m(i, j);
    return v;
}

inline ComplexMatrix unvec_rows(const ComplexVector& v, Index rows, Index cols) {
    if (v.size() != rows * cols) throw DimensionError("unvec_rows: size mismatch");
    ComplexMatrix m(rows, cols);
    for (Index i = 0; i < rows; ++i)
        for (Index j = 0; j < cols; ++j) m(i, j) = v(i * cols + j);
    return m;
}

}  // namespace qsdp
