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
#include <numeric>
#include <string>
#include <vector>

#include "qsdp/error.hpp"
#include "qsdp/problems/common.hpp"
#include "qsdp/quantum.hpp"
#include "qsdp/sdp/sdp.hpp"

namespace qsdp::problems {

/// mu* above this value certifies entanglement.
inline constexpr double tol_detect = 1e-7;

/// Largest d_a * d_b^k handled by the extension SDP.
inline constexpr Index max_extension_dim = 81;

struct SeparabilityVerdict {
    int k;
    double mu_star;
    bool entangled;
    bool ppt_constraints_used;
    int iterations = 0;
};

inline SeparabilityVerdict make_verdict(int k, double mu, bool ppt, int iterations = 0) {
    return {k, mu, mu > tol_detect, ppt, iterations};
}

/// Two-qutrit family 2/7 |psi+><psi+| + a/7 s+ + (5-a)/7 S s+ S, 0 <= a <= 5.
inline DensityOperator horodecki_state(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 5.0)) throw DomainError("horodecki_state: alpha must lie in [0, 5]");
    ComplexVector psi = ComplexVector::Zero(9);
    for (Index i = 0; i < 3; ++i) psi(4 * i) = 1.0 / std::sqrt(3.0);
    ComplexMatrix sp = ComplexMatrix::Zero(9, 9);
    for (Index i = 0; i < 3; ++i) {
        const Index idx = 3 * i + (i + 1) % 3;
        sp(idx, idx) = 1.0 / 3.0;
    }
    const ComplexMatrix s = swap_operator(3);
    const ComplexMatrix rho = (2.0 / 7.0) * psi * psi.adjoint() + (alpha / 7.0) * sp + ((5.0 - alpha) / 7.0) * s * sp * s;
    return DensityOperator(hermitian_part(rho));
}

/// -(5 - sqrt(4a^2 - 20a + 41)) / 42.
inline double horodecki_ppt_mu(double alpha) {
    return -(5.0 - std::sqrt(4.0 * alpha * alpha - 20.0 * alpha + 41.0)) / 42.0;
}

inline void require_bipartite(const DensityOperator& rho, const SystemDims& dims, const char* what) {
    if (dims.size() != 2) throw DimensionError(std::string(what) + ": expected two subsystems");
    dims.require_matches(rho.matrix(), what);
}

/// minimize mu subject to T_b(rho) + mu I >= 0.
inline sdp::SdpProblem ppt_problem(const DensityOperator& rho, const SystemDims& dims) {
    require_bipartite(rho, dims, "ppt_check");
    const Index n = dims.total();
    sdp::SdpBuilder b;
    const auto mu = b.free_real("mu");
    b.sense(sdp::Sense::minimize).objective(mu, 1.0);
    b.psd(sdp::AffineExpr::constant(partial_transpose(rho.matrix(), dims, {1})).add_scalar(mu, identity(n)),
          "T_b(rho) + mu I");
    return b.build();
}

/// Eigenvalue route: mu* = -lambda_min(T_b(rho)).
inline SeparabilityVerdict ppt_check(const DensityOperator& rho, const SystemDims& dims) {
    require_bipartite(rho, dims, "ppt_check");
    return make_verdict(1, -min_eigenvalue(partial_transpose(rho.matrix(), dims, {1})), true);
}

inline SeparabilityVerdict ppt_check_sdp(const DensityOperator& rho, const SystemDims& dims,
                                         const sdp::SolverOptions& opt = {}) {
    const auto sol = solve_or_throw(ppt_problem(rho, dims), opt, "ppt_check_sdp");
    return make_verdict(1, sol.primal_value, true, sol.iterations);
}

/// Level-k extension SDP on H_a (x) H_b^k:
/// minimize mu subject to Tr_{b2..bk} r = rho, r invariant under every swap of
/// two b copies, Tr r = 1, r + mu I >= 0 and, with ppt, T_{b1..bj}(r) + mu I >= 0
/// for j = 1..k.
inline sdp::SdpProblem symmetric_extension_problem(const DensityOperator& rho, const SystemDims& dims, int k,
                                                   bool use_ppt) {
    require_bipartite(rho, dims, "symmetric_extension_sdp");
    if (k < 1) throw DomainError("symmetric_extension_sdp: k must be >= 1");
    const Index da = dims[0], db = dims[1];
    std::vector<Index> ext{da};
    Index total = da;
    for (int i = 0; i < k; ++i) {
        ext.push_back(db);
        total *= db;
        if (total > max_extension_dim)
            throw ResourceError("symmetric_extension_sdp: extension dimension d_a*d_b^k exceeds " +
                                std::to_string(max_extension_dim));
    }
    const SystemDims edims(ext);
    sdp::SdpBuilder b;
    const auto r = b.hermitian("rho_aB", total);
    const auto mu = b.free_real("mu");
    b.sense(sdp::Sense::minimize).objective(mu, 1.0);

    b.equal(sdp::AffineExpr(dims.total()).add(r, [edims](const ComplexMatrix& x) -> ComplexMatrix {
        return partial_trace(x, edims, {0, 1});
    }),
            rho.matrix(), "extension");
    for (int i = 1; i <= k; ++i)
        for (int j = i + 1; j <= k; ++j) {
            const auto si = static_cast<std::size_t>(i), sj = static_cast<std::size_t>(j);
            b.equal(sdp::AffineExpr(total).add(r, [edims, si, sj](const ComplexMatrix& x) -> ComplexMatrix {
                return x - conjugate_by_subsystem_swap(x, edims, si, sj);
            }),
                    "swap b" + std::to_string(i) + " b" + std::to_string(j));
        }
    b.equal(sdp::AffineExpr(1).add(r, trace_map()), scalar_matrix(1.0), "unit trace");
    b.psd(sdp::AffineExpr(total).add(r).add_scalar(mu, identity(total)), "rho_aB + mu I");
    if (use_ppt)
        for (int j = 1; j <= k; ++j) {
            std::vector<std::size_t> which(static_cast<std::size_t>(j));
            std::iota(which.begin(), which.end(), std::size_t{1});
            b.psd(sdp::AffineExpr(total)
                      .add(r, [edims, which](const ComplexMatrix& x) -> ComplexMatrix {
                          return partial_transpose(x, edims, which);
                      })
                      .add_scalar(mu, identity(total)),
                  "T_b1..b" + std::to_string(j) + " + mu I");
        }
    return b.build();
}

/// Level k = 1 with ppt reduces to the PPT SDP on rho itself.
inline SeparabilityVerdict symmetric_extension_sdp(const DensityOperator& rho, const SystemDims& dims, int k,
                                                   bool use_ppt, const sdp::SolverOptions& opt = {}) {
    if (k == 1 && use_ppt) return ppt_check_sdp(rho, dims, opt);
    const auto sol = solve_or_throw(symmetric_extension_problem(rho, dims, k, use_ppt), opt, "symmetric_extension_sdp");
    return make_verdict(k, sol.primal_value, use_ppt, sol.iterations);
}

}  // namespace qsdp::problems
