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
#include <utility>
#include <vector>

#include "qsdp/config.hpp"
#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"

namespace qsdp {

/// Unit vector in C^d.
class Ket {
public:
    explicit Ket(ComplexVector amplitudes, const Tolerances& tol = default_tolerances)
        : amps_(std::move(amplitudes)) {
        if (amps_.size() == 0) throw DimensionError("Ket: empty amplitude vector");
        if (!all_finite(amps_)) throw ValidationError("Ket: non-finite amplitude");
        const double n = amps_.norm();
        if (std::abs(n - 1.0) > tol.unit) {
            std::ostringstream os;
            os << "Ket: amplitudes have norm " << n << ", expected 1";
            throw ValidationError(os.str());
        }
    }

    /// Normalizes the given vector first.
    static Ket normalized(const ComplexVector& v) {
        const double n = v.norm();
        if (!(n > 0.0)) throw ValidationError("Ket: cannot normalize the zero vector");
        return Ket(v / n);
    }

    static Ket basis(Index d, Index i) {
        if (i < 0 || i >= d) throw DimensionError("Ket::basis: index out of range");
        ComplexVector v = ComplexVector::Zero(d);
        v(i) = 1.0;
        return Ket(v);
    }

    static Ket plus() { return normalized(ComplexVector::Ones(2)); }
    static Ket minus() {
        ComplexVector v(2);
        v << 1.0, -1.0;
        return normalized(v);
    }

    /// (1/sqrt d) sum_i |i>|i>.
    static Ket max_entangled(Index d) {
        ComplexVector v = ComplexVector::Zero(d * d);
        for (Index i = 0; i < d; ++i) v(i * d + i) = 1.0;
        return normalized(v);
    }

    Index dim() const noexcept { return amps_.size(); }
    const ComplexVector& amplitudes() const noexcept { return amps_; }
    ComplexMatrix projector() const { return amps_ * amps_.adjoint(); }

    friend Ket tensor(const Ket& a, const Ket& b) { return Ket::normalized(kron(a.amps_, b.amps_)); }

private:
    ComplexVector amps_;
};

/// Square matrix equal to its adjoint. The stored matrix is exactly Hermitian
/// (the residual allowed by the tolerance is symmetrized away).
class HermitianOperator {
public:
    HermitianOperator() = default;
    explicit HermitianOperator(const ComplexMatrix& m, const Tolerances& tol = default_tolerances) {
        require_square(m, "HermitianOperator");
        if (!all_finite(m)) throw ValidationError("HermitianOperator: non-finite entry");
        const double r = hermiticity_residual(m);
        if (r > tol.herm) {
            std::ostringstream os;
            os << "HermitianOperator: |A - A^dagger|_max = " << r << " exceeds " << tol.herm;
            throw ValidationError(os.str());
        }
        m_ = hermitian_part(m);
    }

    Index dim() const noexcept { return m_.rows(); }
    const ComplexMatrix& matrix() const noexcept { return m_; }
    double trace() const { return m_.trace().real(); }
    RealVector eigenvalues() const { return hermitian_eigenvalues(m_); }

private:
    ComplexMatrix m_;
};

/// Unit-trace positive semi-definite operator.
class DensityOperator {
public:
    explicit DensityOperator(const ComplexMatrix& m, const Tolerances& tol = default_tolerances)
        : op_(m, tol) {
        const double t = op_.trace();
        if (std::abs(t - 1.0) > tol.trace) {
            std::ostringstream os;
            os << "DensityOperator: trace " << t << " differs from 1";
            throw ValidationError(os.str());
        }
        const double lmin = op_.dim() ? min_eigenvalue(op_.matrix()) : 0.0;
        if (lmin < -tol.psd) {
            std::ostringstream os;
            os << "DensityOperator: smallest eigenvalue " << lmin << " is negative";
            throw ValidationError(os.str());
        }
    }

    static DensityOperator pure(const Ket& k) { return DensityOperator(k.projector()); }
    static DensityOperator maximally_mixed(Index d) {
        return DensityOperator(identity(d) / static_cast<double>(d));
    }

    Index dim() const noexcept { return op_.dim(); }
    const ComplexMatrix& matrix() const noexcept { return op_.matrix(); }
    const HermitianOperator& op() const noexcept { return op_; }

    /// Eigenvalues clamped to [0, 1].
    RealVector spectrum() const {
        return op_.eigenvalues().cwiseMax(0.0).cwiseMin(1.0);
    }

private:
    HermitianOperator op_;
};

/// Collection of PSD effects summing to the identity.
class Povm {
public:
    explicit Povm(std::vector<ComplexMatrix> effects, const Tolerances& tol = default_tolerances) {
        if (effects.empty()) throw ValidationError("Povm: no effects");
        const Index d = effects.front().rows();
        ComplexMatrix sum = ComplexMatrix::Zero(d, d);
        for (std::size_t i = 0; i < effects.size(); ++i) {
            if (effects[i].rows() != d || effects[i].cols() != d)
                throw DimensionError("Povm: effects differ in dimension");
            HermitianOperator e(effects[i], tol);
            const double lmin = min_eigenvalue(e.matrix());
            if (lmin < -tol.psd) {
                std::ostringstream os;
                os << "Povm: effect " << i << " has eigenvalue " << lmin;
                throw ValidationError(os.str());
            }
            sum += e.matrix();
            effects_.push_back(std::move(e));
        }
        const double residual = max_abs(sum - identity(d));
        if (residual > tol.povm) {
            std::ostringstream os;
            os << "Povm: effects sum to identity only within " << residual;
            throw ValidationError(os.str());
        }
    }

    Index dim() const noexcept { return effects_.front().dim(); }
    std::size_t size() const noexcept { return effects_.size(); }
    const HermitianOperator& operator[](std::size_t i) const { return effects_.at(i); }
    const std::vector<HermitianOperator>& effects() const noexcept { return effects_; }

private:
    std::vector<HermitianOperator> effects_;
};

/// Probabilities in [0,1] summing to one.
class ProbabilityDistribution {
public:
    explicit ProbabilityDistribution(std::vector<double> p, const Tolerances& tol = default_tolerances)
        : p_(std::move(p)) {
        if (p_.empty()) throw ValidationError("ProbabilityDistribution: empty");
        double s = 0.0;
        for (double x : p_) {
            if (!std::isfinite(x) || x < 0.0 || x > 1.0) {
                std::ostringstream os;
                os << "ProbabilityDistribution: entry " << x << " outside [0,1]";
                throw DomainError(os.str());
            }
            s += x;
        }
        if (std::abs(s - 1.0) > tol.trace) {
            std::ostringstream os;
            os << "ProbabilityDistribution: entries sum to " << s;
            throw ValidationError(os.str());
        }
    }

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_.at(i); }
    const std::vector<double>& values() const noexcept { return p_; }

private:
    std::vector<double> p_;
};

struct BlochVector {
    double x = 0.0, y = 0.0, z = 0.0;
    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline ComplexMatrix pauli_x() {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
}
inline ComplexMatrix pauli_y() {
    ComplexMatrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
}
inline ComplexMatrix pauli_z() {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
}
/// H|0> = |+>, H|1> = |->.
inline ComplexMatrix hadamard() {
    ComplexMatrix m(2, 2);
    m << 1, 1, 1, -1;
    return m / std::sqrt(2.0);
}

inline HermitianOperator partial_trace(const HermitianOperator& m, const SystemDims& dims,
                                       std::span<const std::size_t> keep) {
    return HermitianOperator(partial_trace(m.matrix(), dims, keep));
}

inline HermitianOperator partial_transpose(const HermitianOperator& m, const SystemDims& dims,
                                           std::span<const std::size_t> which) {
    return HermitianOperator(partial_transpose(m.matrix(), dims, which));
}

/// p_i = Tr(rho E_i).
inline ProbabilityDistribution born_probabilities(const DensityOperator& rho, const Povm& povm) {
    if (rho.dim() != povm.dim()) throw DimensionError("born_probabilities: dimension mismatch");
    std::vector<double> p;
    p.reserve(povm.size());
    for (const auto& e : povm.effects())
        p.push_back(std::clamp((rho.matrix() * e.matrix()).trace().real(), 0.0, 1.0));
    // Clamping and round-off leave the sum within a few ulps of one.
    return ProbabilityDistribution(std::move(p), Tolerances{.trace = 1e-8});
}

inline DensityOperator bloch_to_density(const BlochVector& r, const Tolerances& tol = default_tolerances) {
    if (r.norm() > 1.0 + tol.psd) {
        std::ostringstream os;
        os << "bloch_to_density: |r| = " << r.norm() << " exceeds 1";
        throw DomainError(os.str());
    }
    return DensityOperator(0.5 * (identity(2) + r.x * pauli_x() + r.y * pauli_y() + r.z * pauli_z()),
                           tol);
}

inline BlochVector density_to_bloch(const DensityOperator& rho) {
    if (rho.dim() != 2) throw DimensionError("density_to_bloch: qubit state required");
    const auto& m = rho.matrix();
    return {(m * pauli_x()).trace().real(), (m * pauli_y()).trace().real(),
            (m * pauli_z()).trace().real()};
}

struct EntanglementReport {
    bool entangled = false;
    Index schmidt_rank = 0;
};

/// A bipartite pure state is entangled iff its d_a x d_b coefficient matrix has
/// numerical rank > 1.
inline EntanglementReport pure_state_is_entangled(const Ket& psi, const SystemDims& dims,
                                                  const Tolerances& tol = default_tolerances) {
    if (dims.size() != 2) throw DimensionError("pure_state_is_entangled: bipartite dims required");
    if (dims.total() != psi.dim())
        throw DimensionError("pure_state_is_entangled: dims do not match ket dimension");
    const ComplexMatrix coeffs = unvec_rows(psi.amplitudes(), dims[0], dims[1]);
    const Index r = numerical_rank(coeffs, tol.rank);
    return {r > 1, r};
}

}  // namespace qsdp
