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

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/QR>

#include "qsdp/channels.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/quantum.hpp"

namespace qsdp {

using Rng = std::mt19937_64;

inline ComplexMatrix ginibre(Index rows, Index cols, Rng& rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    ComplexMatrix g(rows, cols);
    for (Index j = 0; j < cols; ++j)
        for (Index i = 0; i < rows; ++i) {
            const double re = n(rng);
            const double im = n(rng);
            g(i, j) = Complex(re, im);
        }
    return g;
}

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
inline ComplexMatrix random_unitary(Index d, Rng& rng) {
    const Eigen::HouseholderQR<ComplexMatrix> qr(ginibre(d, d, rng));
    ComplexMatrix q = qr.householderQ();
    const ComplexMatrix r = qr.matrixQR();
    for (Index j = 0; j < d; ++j) {
        const double a = std::abs(r(j, j));
        if (a > 0) q.col(j) *= r(j, j) / a;
    }
    return q;
}

inline HermitianOperator random_hermitian(Index d, Rng& rng) {
    const ComplexMatrix g = ginibre(d, d, rng);
    return HermitianOperator(0.5 * (g + g.adjoint()));
}

inline Ket random_pure(Index d, Rng& rng) { return Ket::normalized(ginibre(d, 1, rng).col(0)); }

/// Density operator G G^dagger / Tr with G of size d x rank.
inline DensityOperator random_density(Index d, Rng& rng, Index rank = 0) {
    if (rank <= 0) rank = d;
    const ComplexMatrix g = ginibre(d, rank, rng);
    ComplexMatrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityOperator(hermitian_part(rho));
}

/// Channel with n_kraus Kraus operators cut from a random isometry.
inline KrausChannel random_channel(Index dim_in, Index dim_out, Index n_kraus, Rng& rng) {
    const Index big = dim_out * n_kraus;
    if (big < dim_in) throw DimensionError("random_channel: dim_out * n_kraus must be >= dim_in");
    const ComplexMatrix u = random_unitary(std::max(big, dim_in), rng);
    std::vector<ComplexMatrix> ks;
    for (Index k = 0; k < n_kraus; ++k) ks.push_back(u.block(k * dim_out, 0, dim_out, dim_in));
    return KrausChannel(dim_in, dim_out, std::move(ks));
}

inline ProbabilityDistribution random_distribution(std::size_t n, Rng& rng) {
    std::uniform_real_distribution<double> u(0.05, 1.0);
    std::vector<double> p(n);
    double s = 0.0;
    for (auto& x : p) s += (x = u(rng));
    for (auto& x : p) x /= s;
    return ProbabilityDistribution(p);
}

}  // namespace qsdp
