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

#include "qsdp/error.hpp"
#include "qsdp/problems/common.hpp"
#include "qsdp/quantum.hpp"
#include "qsdp/sdp/sdp.hpp"

namespace qsdp::problems {

enum class FidelityMethod { closed_form, sdp_primal, sdp_dual };
enum class Side { primal, dual };

inline const char* to_string(FidelityMethod m) {
    switch (m) {
        case FidelityMethod::closed_form: return "closed_form";
        case FidelityMethod::sdp_primal: return "sdp_primal";
        case FidelityMethod::sdp_dual: return "sdp_dual";
    }
    return "unknown";
}

struct FidelityResult {
    double value;
    FidelityMethod method;
    int iterations = 0;
    double gap = 0.0;
};

/// ||sqrt(rho) sqrt(sigma)||_1.
inline FidelityResult fidelity_closed(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: state dimensions differ");
    const double f = trace_norm(psd_sqrt(rho.matrix()) * psd_sqrt(sigma.matrix()));
    return {f, FidelityMethod::closed_form};
}

namespace detail {

inline sdp::SdpProblem fidelity_problem(const ComplexMatrix& rho, const ComplexMatrix& sigma, Side side) {
    const Index d = rho.rows();
    sdp::SdpBuilder b;
    const auto w = b.hermitian_psd("W", 2 * d);
    ComplexMatrix c = ComplexMatrix::Zero(2 * d, 2 * d);
    if (side == Side::primal) {
        c.topRightCorner(d, d) = 0.5 * identity(d);
        c.bottomLeftCorner(d, d) = 0.5 * identity(d);
        b.sense(sdp::Sense::maximize).objective(w, c);
        b.equal(sdp::AffineExpr(d).add(w, top_left(d)), rho, "rho block");
        b.equal(sdp::AffineExpr(d).add(w, bottom_right(d)), sigma, "sigma block");
    } else {
        c.topLeftCorner(d, d) = 0.5 * rho;
        c.bottomRightCorner(d, d) = 0.5 * sigma;
        b.sense(sdp::Sense::minimize).objective(w, c);
        fix_off_diagonal(b, w, d, -identity(d), "off-diagonal block");
    }
    return b.build();
}

/// Isometry onto the eigenvectors of m with eigenvalue above tol * max eigenvalue.
inline ComplexMatrix support_basis(const ComplexMatrix& m, double tol = 1e-12) {
    const Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
    const RealVector& ev = es.eigenvalues();
    const double cut = tol * std::max(1.0, ev.cwiseAbs().maxCoeff());
    Index r = 0;
    for (Index i = 0; i < ev.size(); ++i) r += ev(i) > cut ? 1 : 0;
    return es.eigenvectors().rightCols(r);
}

}  // namespace detail

/// primal: maximize Re Tr(L) over W = [[rho, L], [L^dagger, sigma]] >= 0.
/// dual:   minimize (Tr(rho Y) + Tr(sigma Z)) / 2 over [[Y, -I], [-I, Z]] >= 0.
inline sdp::SdpProblem fidelity_problem(const DensityOperator& rho, const DensityOperator& sigma, Side side) {
    if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: state dimensions differ");
    return detail::fidelity_problem(rho.matrix(), sigma.matrix(), side);
}

/// Solves the SDP after compressing both states onto their joint support, which
/// leaves the fidelity unchanged and keeps the problem strictly feasible.
inline FidelityResult fidelity_sdp(const DensityOperator& rho, const DensityOperator& sigma, Side side,
                                   const sdp::SolverOptions& opt = {}) {
    if (rho.dim() != sigma.dim()) throw DimensionError("fidelity: state dimensions differ");
    const FidelityMethod method = side == Side::primal ? FidelityMethod::sdp_primal : FidelityMethod::sdp_dual;
    ComplexMatrix r = rho.matrix(), s = sigma.matrix();
    for (bool on_sigma = true;; on_sigma = !on_sigma) {
        const ComplexMatrix v = detail::support_basis(on_sigma ? s : r);
        if (v.cols() == 0) return {0.0, method};
        if (v.cols() == r.rows() && detail::support_basis(on_sigma ? r : s).cols() == r.rows()) break;
        r = v.adjoint() * r * v;
        s = v.adjoint() * s * v;
    }
    const auto sol = solve_or_throw(detail::fidelity_problem(r, s, side), opt, "fidelity_sdp");
    return {sol.primal_value, method, sol.iterations, sol.gap};
}

}  // namespace qsdp::problems
