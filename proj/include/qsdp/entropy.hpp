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
#include <limits>
#include <sstream>
#include <span>

#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/quantum.hpp"

// Entropies in bits. 0 log 0 is taken as 0 throughout.

namespace qsdp {

namespace detail {

inline double plogp(double p) { return p > 0.0 ? p * std::log2(p) : 0.0; }

inline void require_probabilities(std::span<const double> p, const char* what) {
    for (double x : p)
        if (!std::isfinite(x) || x < 0.0) {
            std::ostringstream os;
            os << what << ": negative or non-finite probability " << x;
            throw DomainError(os.str());
        }
}

inline void require_probabilities(const RealMatrix& joint, const char* what) {
    require_probabilities(std::span<const double>(joint.data(), static_cast<std::size_t>(joint.size())),
                          what);
}

}  // namespace detail

/// h(p) = -p log p - (1-p) log(1-p).
inline double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        std::ostringstream os;
        os << "binary_entropy: p = " << p << " outside [0,1]";
        throw DomainError(os.str());
    }
    return -detail::plogp(p) - detail::plogp(1.0 - p);
}

inline double shannon_entropy(std::span<const double> p) {
    detail::require_probabilities(p, "shannon_entropy");
    double h = 0.0;
    for (double x : p) h -= detail::plogp(x);
    return h;
}

inline double shannon_entropy(const ProbabilityDistribution& p) { return shannon_entropy(p.values()); }

/// joint(x, y) = p(x, y).
inline double joint_entropy(const RealMatrix& joint) {
    detail::require_probabilities(joint, "joint_entropy");
    double h = 0.0;
    for (Index i = 0; i < joint.size(); ++i) h -= detail::plogp(joint.data()[i]);
    return h;
}

/// H(Y|X) = H(X,Y) - H(X), rows of `joint` indexed by x.
inline double conditional_entropy(const RealMatrix& joint) {
    detail::require_probabilities(joint, "conditional_entropy");
    const RealVector px = joint.rowwise().sum();
    return joint_entropy(joint) - shannon_entropy(std::span<const double>(px.data(), px.size()));
}

/// I(X:Y) = H(X) + H(Y) - H(X,Y).
inline double mutual_information(const RealMatrix& joint) {
    detail::require_probabilities(joint, "mutual_information");
    const RealVector px = joint.rowwise().sum();
    const RealVector py = joint.colwise().sum().transpose();
    return shannon_entropy(std::span<const double>(px.data(), px.size())) +
           shannon_entropy(std::span<const double>(py.data(), py.size())) - joint_entropy(joint);
}

/// D(p||q) = sum p log(p/q); +infinity when q(x) = 0 < p(x).
inline double relative_entropy(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw DimensionError("relative_entropy: length mismatch");
    detail::require_probabilities(p, "relative_entropy");
    detail::require_probabilities(q, "relative_entropy");
    double d = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (p[i] == 0.0) continue;
        if (q[i] == 0.0) return std::numeric_limits<double>::infinity();
        d += p[i] * std::log2(p[i] / q[i]);
    }
    return d;
}

/// S(rho) = -sum lambda log lambda over the clamped spectrum.
inline double von_neumann_entropy(const DensityOperator& rho) {
    const RealVector ev = rho.spectrum();
    double s = 0.0;
    for (Index i = 0; i < ev.size(); ++i) s -= detail::plogp(ev(i));
    return s;
}

}  // namespace qsdp
