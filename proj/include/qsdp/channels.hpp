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

#include <cmath>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsdp/config.hpp"
#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/quantum.hpp"

// Channel representations. Conventions, fixed once here:
//  * Choi matrix J = sum_ij B(|i><j|) (x) |i><j|, output system first (slow index).
//  * Transfer matrix T[(k,l),(i,j)] = <k|B(|i><j|)|l>, so vec(B(X)) = T vec(X)
//    with row-major vec, and T(C o B) = T(C) T(B).
//  * Reshuffle: T[(k,l),(i,j)] = J[(k,i),(l,j)].

namespace qsdp {

class ChoiMatrix;
class TransferMatrix;

/// sum_i K_i^dagger K_i - I, the completeness residual of a Kraus list.
inline ComplexMatrix completeness_defect(const std::vector<ComplexMatrix>& kraus, Index dim_in) {
    ComplexMatrix s = -identity(dim_in);
    for (const auto& k : kraus) s += k.adjoint() * k;
    return s;
}

/// CPTP map rho -> sum K_i rho K_i^dagger from C^{dim_in} to C^{dim_out}.
class KrausChannel {
public:
    KrausChannel(Index dim_in, Index dim_out, std::vector<ComplexMatrix> kraus,
                 const Tolerances& tol = default_tolerances)
        : dim_in_(dim_in), dim_out_(dim_out), kraus_(std::move(kraus)) {
        if (dim_in < 1 || dim_out < 1) throw DimensionError("KrausChannel: dimensions must be >= 1");
        if (kraus_.empty()) throw ValidationError("KrausChannel: no Kraus operators");
        for (const auto& k : kraus_) {
            if (k.rows() != dim_out || k.cols() != dim_in) {
                std::ostringstream os;
                os << "KrausChannel: Kraus operator is " << k.rows() << "x" << k.cols() << ", expected "
                   << dim_out << "x" << dim_in;
                throw DimensionError(os.str());
            }
            if (!all_finite(k)) throw ValidationError("KrausChannel: non-finite Kraus entry");
        }
        const double r = completeness_residual();
        if (r > tol.cptp) {
            std::ostringstream os;
            os << "KrausChannel: completeness residual |sum K^dagger K - I| = " << r << " exceeds "
               << tol.cptp;
            throw ValidationError(os.str());
        }
    }

    Index dim_in() const noexcept { return dim_in_; }
    Index dim_out() const noexcept { return dim_out_; }
    const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }

    /// Largest absolute entry of sum K^dagger K - I.
    double completeness_residual() const { return max_abs(completeness_defect(kraus_, dim_in_)); }

    ComplexMatrix apply(const ComplexMatrix& x) const {
        if (x.rows() != dim_in_ || x.cols() != dim_in_)
            throw DimensionError("KrausChannel::apply: input dimension mismatch");
        ComplexMatrix out = ComplexMatrix::Zero(dim_out_, dim_out_);
        for (const auto& k : kraus_) out += k * x * k.adjoint();
        return out;
    }

private:
    Index dim_in_, dim_out_;
    std::vector<ComplexMatrix> kraus_;
};

inline HermitianOperator apply(const KrausChannel& ch, const HermitianOperator& x) {
    return HermitianOperator(hermitian_part(ch.apply(x.matrix())));
}

inline DensityOperator apply(const KrausChannel& ch, const DensityOperator& rho) {
    return DensityOperator(hermitian_part(ch.apply(rho.matrix())));
}

/// Validated Choi matrix of a CPTP map: PSD and Tr_out J = I_in.
class ChoiMatrix {
public:
    ChoiMatrix(Index dim_in, Index dim_out, const ComplexMatrix& j,
               const Tolerances& tol = default_tolerances)
        : dim_in_(dim_in), dim_out_(dim_out), j_(j, tol) {
        if (j_.dim() != dim_in * dim_out) throw DimensionError("ChoiMatrix: size is not dim_out*dim_in");
        const double lmin = min_eigenvalue(j_.matrix());
        if (lmin < -tol.psd) {
            std::ostringstream os;
            os << "ChoiMatrix: not positive semi-definite, eigenvalue " << lmin;
            throw ValidationError(os.str());
        }
        const double r = trace_preservation_residual();
        if (r > tol.cptp) {
            std::ostringstream os;
            os << "ChoiMatrix: not trace preserving, |Tr_out J - I| = " << r;
            throw ValidationError(os.str());
        }
    }

    Index dim_in() const noexcept { return dim_in_; }
    Index dim_out() const noexcept { return dim_out_; }
    const ComplexMatrix& matrix() const noexcept { return j_.matrix(); }

    double trace_preservation_residual() const {
        const std::size_t keep[] = {1};
        return max_abs(partial_trace(j_.matrix(), SystemDims{dim_out_, dim_in_}, keep) -
                       identity(dim_in_));
    }

private:
    Index dim_in_, dim_out_;
    HermitianOperator j_;
};

/// Transfer matrix (d_out^2 x d_in^2) of a linear map; no CPTP requirement.
class TransferMatrix {
public:
    TransferMatrix(Index dim_in, Index dim_out, ComplexMatrix t)
        : dim_in_(dim_in), dim_out_(dim_out), t_(std::move(t)) {
        if (t_.rows() != dim_out * dim_out || t_.cols() != dim_in * dim_in)
            throw DimensionError("TransferMatrix: shape must be d_out^2 x d_in^2");
    }
    Index dim_in() const noexcept { return dim_in_; }
    Index dim_out() const noexcept { return dim_out_; }
    const ComplexMatrix& matrix() const noexcept { return t_; }

private:
    Index dim_in_, dim_out_;
    ComplexMatrix t_;
};

/// T[(k,l),(i,j)] = J[(k,i),(l,j)].
inline ComplexMatrix choi_to_transfer_matrix(const ComplexMatrix& j, Index dim_in, Index dim_out) {
    if (j.rows() != dim_out * dim_in || j.cols() != dim_out * dim_in)
        throw DimensionError("choi reshuffle: Choi matrix has wrong size");
    ComplexMatrix t(dim_out * dim_out, dim_in * dim_in);
    for (Index k = 0; k < dim_out; ++k)
        for (Index l = 0; l < dim_out; ++l)
            for (Index i = 0; i < dim_in; ++i)
                for (Index jj = 0; jj < dim_in; ++jj)
                    t(k * dim_out + l, i * dim_in + jj) = j(k * dim_in + i, l * dim_in + jj);
    return t;
}

inline ComplexMatrix transfer_to_choi_matrix(const ComplexMatrix& t, Index dim_in, Index dim_out) {
    if (t.rows() != dim_out * dim_out || t.cols() != dim_in * dim_in)
        throw DimensionError("choi reshuffle: transfer matrix has wrong size");
    ComplexMatrix j(dim_out * dim_in, dim_out * dim_in);
    for (Index k = 0; k < dim_out; ++k)
        for (Index l = 0; l < dim_out; ++l)
            for (Index i = 0; i < dim_in; ++i)
                for (Index jj = 0; jj < dim_in; ++jj)
                    j(k * dim_in + i, l * dim_in + jj) = t(k * dim_out + l, i * dim_in + jj);
    return j;
}

/// Linear map between operator spaces, held by its transfer matrix together
/// with its Choi-like matrix. Differences of channels live here.
class Superoperator {
public:
    Superoperator(Index dim_in, Index dim_out, ComplexMatrix transfer)
        : dim_in_(dim_in), dim_out_(dim_out), t_(std::move(transfer)) {
        if (t_.rows() != dim_out * dim_out || t_.cols() != dim_in * dim_in)
            throw DimensionError("Superoperator: transfer matrix must be d_out^2 x d_in^2");
        if (!all_finite(t_)) throw ValidationError("Superoperator: non-finite entry");
        j_ = transfer_to_choi_matrix(t_, dim_in_, dim_out_);
    }

    static Superoperator from_choi(Index dim_in, Index dim_out, const ComplexMatrix& j) {
        return Superoperator(dim_in, dim_out, choi_to_transfer_matrix(j, dim_in, dim_out));
    }

    Index dim_in() const noexcept { return dim_in_; }
    Index dim_out() const noexcept { return dim_out_; }
    const ComplexMatrix& transfer() const noexcept { return t_; }
    /// Hermitian whenever the map preserves Hermiticity; not PSD in general.
    const ComplexMatrix& choi() const noexcept { return j_; }

    ComplexMatrix apply(const ComplexMatrix& x) const {
        if (x.rows() != dim_in_ || x.cols() != dim_in_)
            throw DimensionError("Superoperator::apply: input dimension mismatch");
        return unvec_rows(t_ * vec_rows(x), dim_out_, dim_out_);
    }

    /// Adjoint map with respect to the Hilbert-Schmidt inner product.
    ComplexMatrix apply_adjoint(const ComplexMatrix& y) const {
        if (y.rows() != dim_out_ || y.cols() != dim_out_)
            throw DimensionError("Superoperator::apply_adjoint: dimension mismatch");
        return unvec_rows(t_.adjoint() * vec_rows(y), dim_in_, dim_in_);
    }

private:
    Index dim_in_, dim_out_;
    ComplexMatrix t_;
    ComplexMatrix j_;
};

/// J = sum_ij B(|i><j|) (x) |i><j|.
inline ChoiMatrix kraus_to_choi(const KrausChannel& ch, const Tolerances& tol = default_tolerances) {
    const Index da = ch.dim_in(), db = ch.dim_out();
    ComplexMatrix j = ComplexMatrix::Zero(db * da, db * da);
    for (const auto& k : ch.kraus()) {
        // (K (x) I)|gamma> has component (b, i) = K[b, i].
        ComplexVector v(db * da);
        for (Index b = 0; b < db; ++b)
            for (Index i = 0; i < da; ++i) v(b * da + i) = k(b, i);
        j += v * v.adjoint();
    }
    return ChoiMatrix(da, db, j, tol);
}

/// Kraus operators from the eigendecomposition of J; eigenvalues at or below
/// tol.rank are discarded.
inline KrausChannel choi_to_kraus(const ChoiMatrix& choi, const Tolerances& tol = default_tolerances) {
    const Index da = choi.dim_in(), db = choi.dim_out();
    const auto eig = hermitian_eigen(choi.matrix());
    std::vector<ComplexMatrix> ops;
    for (Index e = eig.values.size(); e-- > 0;) {
        const double lam = eig.values(e);
        if (lam <= tol.rank) continue;
        ComplexMatrix k(db, da);
        for (Index b = 0; b < db; ++b)
            for (Index i = 0; i < da; ++i) k(b, i) = std::sqrt(lam) * eig.vectors(b * da + i, e);
        ops.push_back(std::move(k));
    }
    if (ops.empty()) ops.push_back(ComplexMatrix::Zero(db, da));
    return KrausChannel(da, db, std::move(ops), tol);
}

inline TransferMatrix choi_reshuffle(const ChoiMatrix& choi) {
    return TransferMatrix(choi.dim_in(), choi.dim_out(),
                          choi_to_transfer_matrix(choi.matrix(), choi.dim_in(), choi.dim_out()));
}

/// Inverse of choi_reshuffle; validates the result as a CPTP Choi matrix.
inline ChoiMatrix transfer_to_choi(const TransferMatrix& t, const Tolerances& tol = default_tolerances) {
    return ChoiMatrix(t.dim_in(), t.dim_out(), transfer_to_choi_matrix(t.matrix(), t.dim_in(), t.dim_out()),
                      tol);
}

/// T = sum_i K_i (x) conj(K_i).
inline TransferMatrix kraus_to_transfer(const KrausChannel& ch) {
    const Index da = ch.dim_in(), db = ch.dim_out();
    ComplexMatrix t = ComplexMatrix::Zero(db * db, da * da);
    for (const auto& k : ch.kraus()) t += kron(k, k.conjugate());
    return TransferMatrix(da, db, std::move(t));
}

inline Superoperator to_superoperator(const KrausChannel& ch) {
    return Superoperator(ch.dim_in(), ch.dim_out(), kraus_to_transfer(ch).matrix());
}

/// Channel c o b: Kraus operators are all products C_j B_i.
inline KrausChannel compose(const KrausChannel& c, const KrausChannel& b) {
    if (c.dim_in() != b.dim_out()) throw DimensionError("compose: c.dim_in != b.dim_out");
    std::vector<ComplexMatrix> ops;
    ops.reserve(c.kraus().size() * b.kraus().size());
    for (const auto& kc : c.kraus())
        for (const auto& kb : b.kraus()) ops.push_back(kc * kb);
    return KrausChannel(b.dim_in(), c.dim_out(), std::move(ops));
}

inline TransferMatrix compose(const TransferMatrix& c, const TransferMatrix& b) {
    if (c.dim_in() != b.dim_out()) throw DimensionError("compose: c.dim_in != b.dim_out");
    return TransferMatrix(b.dim_in(), c.dim_out(), c.matrix() * b.matrix());
}

/// Choi matrix of C o B from the Choi matrices of C (d_c d_b) and B (d_b d_a).
/// Bilinear in its two arguments; neither needs to be CPTP.
inline ComplexMatrix compose_choi(const ComplexMatrix& j_c, const ComplexMatrix& j_b, Index dim_a,
                                  Index dim_b, Index dim_c) {
    const ComplexMatrix t = choi_to_transfer_matrix(j_c, dim_b, dim_c) *
                            choi_to_transfer_matrix(j_b, dim_a, dim_b);
    return transfer_to_choi_matrix(t, dim_a, dim_c);
}

/// Complementary channel: [L_j]_{i,k} = [K_i]_{j,k}; output dimension equals the
/// number of Kraus operators of ch.
inline KrausChannel complementary(const KrausChannel& ch) {
    const auto& ks = ch.kraus();
    const Index n = static_cast<Index>(ks.size());
    std::vector<ComplexMatrix> ls;
    ls.reserve(ch.dim_out());
    for (Index j = 0; j < ch.dim_out(); ++j) {
        ComplexMatrix l(n, ch.dim_in());
        for (Index i = 0; i < n; ++i) l.row(i) = ks[i].row(j);
        ls.push_back(std::move(l));
    }
    return KrausChannel(ch.dim_in(), n, std::move(ls));
}

/// D = t B1 - (1 - t) B2.
inline Superoperator superop_difference(double t, const Superoperator& b1, const Superoperator& b2) {
    if (b1.dim_in() != b2.dim_in() || b1.dim_out() != b2.dim_out())
        throw DimensionError("superop_difference: channel dimensions differ");
    return Superoperator(b1.dim_in(), b1.dim_out(), t * b1.transfer() - (1.0 - t) * b2.transfer());
}

inline Superoperator superop_difference(double t, const KrausChannel& b1, const KrausChannel& b2) {
    return superop_difference(t, to_superoperator(b1), to_superoperator(b2));
}

// ---------------------------------------------------------------------------
// Named channels

namespace detail {

inline void require_interval(double v, double lo, double hi, const char* name, const char* param) {
    if (!(v >= lo && v <= hi)) {
        std::ostringstream os;
        os << name << ": " << param << " = " << v << " outside [" << lo << ", " << hi << "]";
        throw DomainError(os.str());
    }
}

inline ComplexMatrix unit(Index rows, Index cols, Index i, Index j) {
    ComplexMatrix m = ComplexMatrix::Zero(rows, cols);
    m(i, j) = 1.0;
    return m;
}

}  // namespace detail

inline KrausChannel identity_channel(Index d) { return KrausChannel(d, d, {identity(d)}); }

/// Erasure channel; the erasure flag |e> is the last output basis vector.
inline KrausChannel erasure(Index dim_in, double p) {
    detail::require_interval(p, 0.0, 1.0, "erasure", "p");
    if (dim_in < 1) throw DomainError("erasure: dim_in must be >= 1");
    const Index dout = dim_in + 1;
    std::vector<ComplexMatrix> ops;
    ComplexMatrix k0 = ComplexMatrix::Zero(dout, dim_in);
    k0.topRows(dim_in) = identity(dim_in);
    ops.push_back(std::sqrt(1.0 - p) * k0);
    for (Index i = 0; i < dim_in; ++i) ops.push_back(std::sqrt(p) * detail::unit(dout, dim_in, dim_in, i));
    return KrausChannel(dim_in, dout, std::move(ops));
}

/// rho -> lambda rho + (1 - lambda) Tr(rho) I/2 with Kraus operators
/// sqrt(1-p) I, sqrt(p/3) {X, Y, Z}, p = 3(1 - lambda)/4.
inline KrausChannel depolarizing_qubit(double lambda) {
    detail::require_interval(lambda, -1.0 / 3.0, 1.0, "depolarizing_qubit", "lambda");
    const double p = 3.0 * (1.0 - lambda) / 4.0;
    return KrausChannel(2, 2,
                        {std::sqrt(1.0 - p) * identity(2), std::sqrt(p / 3.0) * pauli_x(),
                         std::sqrt(p / 3.0) * pauli_y(), std::sqrt(p / 3.0) * pauli_z()});
}

/// Same channel parametrized by the Pauli error probability p in [0, 1].
inline KrausChannel depolarizing_qubit_p(double p) {
    detail::require_interval(p, 0.0, 1.0, "depolarizing_qubit_p", "p");
    return depolarizing_qubit(1.0 - 4.0 * p / 3.0);
}

/// rho -> lambda rho + (1 - lambda) Tr(rho) I/d, lambda in [-1/(d^2-1), 1].
/// Kraus operators are weighted clock-and-shift unitaries X^a Z^b.
inline KrausChannel depolarizing_qudit(Index d, double lambda) {
    if (d < 2) throw DomainError("depolarizing_qudit: d must be >= 2");
    const double dd = static_cast<double>(d * d);
    detail::require_interval(lambda, -1.0 / (dd - 1.0), 1.0, "depolarizing_qudit", "lambda");
    ComplexMatrix shift = ComplexMatrix::Zero(d, d), clock = ComplexMatrix::Zero(d, d);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (Index i = 0; i < d; ++i) {
        shift((i + 1) % d, i) = 1.0;
        clock(i, i) = std::polar(1.0, two_pi * static_cast<double>(i) / static_cast<double>(d));
    }
    const double w_id = std::max(0.0, lambda + (1.0 - lambda) / dd);
    const double w = (1.0 - lambda) / dd;
    std::vector<ComplexMatrix> ops;
    ComplexMatrix xa = identity(d);
    for (Index a = 0; a < d; ++a) {
        ComplexMatrix u = xa;
        for (Index b = 0; b < d; ++b) {
            ops.push_back(std::sqrt(a == 0 && b == 0 ? w_id : w) * u);
            u = u * clock;
        }
        xa = shift * xa;
    }
    return KrausChannel(d, d, std::move(ops));
}

/// rho -> (1 - q) rho + q Z rho Z.
inline KrausChannel dephasing(double q) {
    detail::require_interval(q, 0.0, 1.0, "dephasing", "q");
    return KrausChannel(2, 2, {std::sqrt(1.0 - q) * identity(2), std::sqrt(q) * pauli_z()});
}

/// rho -> (Tr(rho) I + rho^T)/(d + 1).
inline KrausChannel werner_holevo_1(Index d) {
    if (d < 1) throw DomainError("werner_holevo_1: d must be >= 1");
    std::vector<ComplexMatrix> ops;
    const double s = 1.0 / std::sqrt(static_cast<double>(d + 1));
    for (Index i = 0; i < d; ++i) ops.push_back(std::sqrt(2.0) * s * detail::unit(d, d, i, i));
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            ops.push_back(s * (detail::unit(d, d, i, j) + detail::unit(d, d, j, i)));
    return KrausChannel(d, d, std::move(ops));
}

/// rho -> (Tr(rho) I - rho^T)/(d - 1).
inline KrausChannel werner_holevo_2(Index d) {
    if (d < 2) throw DomainError("werner_holevo_2: d must be >= 2");
    std::vector<ComplexMatrix> ops;
    const double s = 1.0 / std::sqrt(static_cast<double>(d - 1));
    for (Index i = 0; i < d; ++i)
        for (Index j = i + 1; j < d; ++j)
            ops.push_back(s * (detail::unit(d, d, i, j) - detail::unit(d, d, j, i)));
    return KrausChannel(d, d, std::move(ops));
}

/// Entanglement-breaking measure-and-prepare qubit channel with Kraus
/// operators |0><0| and |1><1|.
inline KrausChannel measure_computational() {
    return KrausChannel(2, 2, {detail::unit(2, 2, 0, 0), detail::unit(2, 2, 1, 1)});
}

}  // namespace qsdp
