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

#include <sstream>
#include <string>

#include "qsdp/error.hpp"
#include "qsdp/sdp/sdp.hpp"

namespace qsdp::problems {

/// Solves p and throws SolverError unless the status is optimal.
inline sdp::SdpSolution solve_or_throw(const sdp::SdpProblem& p, const sdp::SolverOptions& opt,
                                       const std::string& what) {
    sdp::SdpSolution sol = sdp::solve(p, opt);
    if (!sol.optimal()) {
        std::ostringstream os;
        os << what << ": solver returned " << sdp::to_string(sol.status) << " after " << sol.iterations
           << " iterations";
        if (!sol.message.empty()) os << " (" << sol.message << ")";
        throw SolverError(os.str());
    }
    return sol;
}

/// Equalities fixing the upper-right n x n block of the 2n x 2n variable w to
/// target, written as two Hermitian conditions.
inline void fix_off_diagonal(sdp::SdpBuilder& b, sdp::VarId w, Index n, const ComplexMatrix& target,
                             const std::string& label) {
    sdp::AffineExpr re(n);
    re.add(w, [n](const ComplexMatrix& x) -> ComplexMatrix {
        const ComplexMatrix k = x.topRightCorner(n, n);
        return 0.5 * (k + k.adjoint());
    });
    b.equal(std::move(re), 0.5 * (target + target.adjoint()), label + " (hermitian part)");
    sdp::AffineExpr im(n);
    im.add(w, [n](const ComplexMatrix& x) -> ComplexMatrix {
        const ComplexMatrix k = x.topRightCorner(n, n);
        return Complex(0, -0.5) * (k - k.adjoint());
    });
    b.equal(std::move(im), Complex(0, -0.5) * (target - target.adjoint()), label + " (anti-hermitian part)");
}

inline sdp::LinearMap top_left(Index n) {
    return [n](const ComplexMatrix& x) -> ComplexMatrix { return x.topLeftCorner(n, n); };
}

inline sdp::LinearMap bottom_right(Index n) {
    return [n](const ComplexMatrix& x) -> ComplexMatrix { return x.bottomRightCorner(n, n); };
}

inline sdp::LinearMap trace_map() {
    return [](const ComplexMatrix& x) -> ComplexMatrix {
        ComplexMatrix t(1, 1);
        t(0, 0) = x.trace();
        return t;
    };
}

inline ComplexMatrix scalar_matrix(double v) {
    ComplexMatrix t(1, 1);
    t(0, 0) = v;
    return t;
}

}  // namespace qsdp::problems
