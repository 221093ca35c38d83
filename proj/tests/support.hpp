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

// Shared helpers for the test suites: seeded generators and brute-force
// oracles that avoid the library's own index machinery.

#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <gtest/gtest.h>

#include "qsdp/qsdp.hpp"

namespace qsdp::testing {

inline ::testing::AssertionResult matrix_near(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        return ::testing::AssertionFailure() << "shape " << a.rows() << "x" << a.cols() << " vs " << b.rows()
                                             << "x" << b.cols();
    const double d = max_abs(a - b);
    if (d <= tol) return ::testing::AssertionSuccess();
    return ::testing::AssertionFailure() << "max |a - b| = " << d << " > " << tol;
}

/// Reduced operator on subsystem 0 of a two-party operator, by explicit loops.
inline ComplexMatrix brute_trace_second(const ComplexMatrix& m, Index da, Index db) {
    ComplexMatrix out = ComplexMatrix::Zero(da, da);
    for (Index i = 0; i < da; ++i)
        for (Index j = 0; j < da; ++j)
            for (Index k = 0; k < db; ++k) out(i, j) += m(i * db + k, j * db + k);
    return out;
}

inline ComplexMatrix brute_trace_first(const ComplexMatrix& m, Index da, Index db) {
    ComplexMatrix out = ComplexMatrix::Zero(db, db);
    for (Index k = 0; k < db; ++k)
        for (Index l = 0; l < db; ++l)
            for (Index i = 0; i < da; ++i) out(k, l) += m(i * db + k, i * db + l);
    return out;
}

inline ComplexMatrix brute_transpose_second(const ComplexMatrix& m, Index da, Index db) {
    ComplexMatrix out(da * db, da * db);
    for (Index i = 0; i < da; ++i)
        for (Index k = 0; k < db; ++k)
            for (Index j = 0; j < da; ++j)
                for (Index l = 0; l < db; ++l) out(i * db + k, j * db + l) = m(i * db + l, j * db + k);
    return out;
}

/// Choi matrix straight from the definition sum_ij B(|i><j|) (x) |i><j|.
template <typename Map>
ComplexMatrix brute_choi(const Map& apply, Index din, Index dout) {
    ComplexMatrix j = ComplexMatrix::Zero(dout * din, dout * din);
    for (Index a = 0; a < din; ++a)
        for (Index b = 0; b < din; ++b) {
            ComplexMatrix e = ComplexMatrix::Zero(din, din);
            e(a, b) = 1.0;
            const ComplexMatrix out = apply(e);
            for (Index k = 0; k < dout; ++k)
                for (Index l = 0; l < dout; ++l) j(k * din + a, l * din + b) = out(k, l);
        }
    return j;
}

/// Transfer matrix entry-by-entry from <k|B(|i><j|)|l>.
template <typename Map>
ComplexMatrix brute_transfer(const Map& apply, Index din, Index dout) {
    ComplexMatrix t(dout * dout, din * din);
    for (Index i = 0; i < din; ++i)
        for (Index j = 0; j < din; ++j) {
            ComplexMatrix e = ComplexMatrix::Zero(din, din);
            e(i, j) = 1.0;
            const ComplexMatrix out = apply(e);
            for (Index k = 0; k < dout; ++k)
                for (Index l = 0; l < dout; ++l) t(k * dout + l, i * din + j) = out(k, l);
        }
    return t;
}

/// Eigenvalues of a 2x2 Hermitian matrix from the quadratic formula.
inline std::pair<double, double> eig2(const ComplexMatrix& h) {
    const double a = h(0, 0).real(), d = h(1, 1).real();
    const double b2 = std::norm(h(0, 1));
    const double m = 0.5 * (a + d), r = std::sqrt(0.25 * (a - d) * (a - d) + b2);
    return {m - r, m + r};
}

inline double h2(double p) {
    if (p <= 0.0 || p >= 1.0) return 0.0;
    return -p * std::log2(p) - (1 - p) * std::log2(1 - p);
}

inline DensityOperator diag_state(std::vector<double> p) {
    ComplexMatrix m = ComplexMatrix::Zero(static_cast<Index>(p.size()), static_cast<Index>(p.size()));
    for (std::size_t i = 0; i < p.size(); ++i) m(static_cast<Index>(i), static_cast<Index>(i)) = p[i];
    return DensityOperator(m);
}

inline std::vector<double> uniform_grid(double lo, double hi, int n) {
    std::vector<double> g;
    for (int i = 0; i < n; ++i) g.push_back(lo + (hi - lo) * i / (n - 1));
    return g;
}

}  // namespace qsdp::testing
