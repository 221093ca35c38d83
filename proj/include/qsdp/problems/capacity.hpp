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

#include <algorithm>
#include <cmath>
#include <optional>

#include "qsdp/channels.hpp"
#include "qsdp/entropy.hpp"
#include "qsdp/error.hpp"
#include "qsdp/problems/common.hpp"
#include "qsdp/quantum.hpp"
#include "qsdp/sdp/sdp.hpp"

namespace qsdp::problems {

/// S(B(rho)) - S(B^c(rho)), in bits.
inline double coherent_information(const KrausChannel& ch, const DensityOperator& rho) {
    if (rho.dim() != ch.dim_in()) throw DimensionError("coherent_information: input dimension mismatch");
    const DensityOperator out(hermitian_part(ch.apply(rho.matrix())), Tolerances{.psd = 1e-8, .trace = 1e-8});
    const DensityOperator env(hermitian_part(complementary(ch).apply(rho.matrix())),
                              Tolerances{.psd = 1e-8, .trace = 1e-8});
    return von_neumann_entropy(out) - von_neumann_entropy(env);
}

/// minimize 2 mu over the degrading map C (Choi J_cb) subject to
/// Tr_c J_cb = I_b, J_cb >= 0, Z >= 0, Z - J(B^c) + J(C o B) >= 0 and
/// mu I_a - Tr_c Z >= 0. J(C o B) is linear in J_cb.
inline sdp::SdpProblem epsilon_degradable_problem(const KrausChannel& ch) {
    const Index da = ch.dim_in(), db = ch.dim_out();
    const KrausChannel comp = complementary(ch);
    const Index dc = comp.dim_out();
    const ComplexMatrix j_b = kraus_to_choi(ch).matrix();     // (db da)
    const ComplexMatrix j_bc = kraus_to_choi(comp).matrix();  // (dc da)
    const SystemDims cb{dc, db}, ca{dc, da};
    sdp::SdpBuilder b;
    const auto jc = b.hermitian_psd("J_cb", dc * db);
    const auto z = b.hermitian_psd("Z_ca", dc * da);
    const auto mu = b.free_real("mu");
    b.sense(sdp::Sense::minimize).objective(mu, 2.0);
    b.equal(sdp::AffineExpr(db).add(jc, [cb](const ComplexMatrix& x) -> ComplexMatrix {
        return partial_trace(x, cb, {1});
    }),
            identity(db), "Tr_c J_cb = I_b");
    b.psd(sdp::AffineExpr::constant(-j_bc).add(z).add(jc, [j_b, da, db, dc](const ComplexMatrix& x) -> ComplexMatrix {
        return compose_choi(x, j_b, da, db, dc);
    }),
          "Z - J(B^c) + J(C o B)");
    b.psd(sdp::AffineExpr(da).add_scalar(mu, identity(da)).add(z, [ca](const ComplexMatrix& x) -> ComplexMatrix {
        return -partial_trace(x, ca, {1});
    }),
          "mu I - Tr_c Z");
    return b.build();
}

struct EpsilonDegradability {
    double epsilon;        // clamped at zero
    double raw_value;      // solver objective before clamping
    ChoiMatrix degrading_choi;
    sdp::SdpSolution solution;
};

inline EpsilonDegradability epsilon_degradable_sdp(const KrausChannel& ch, const sdp::SolverOptions& opt = {}) {
    const Index db = ch.dim_out();
    const Index dc = static_cast<Index>(ch.kraus().size());
    auto sol = solve_or_throw(epsilon_degradable_problem(ch), opt, "epsilon_degradable_sdp");
    ChoiMatrix jc(db, dc, hermitian_part(sol.matrix("J_cb")), Tolerances{.psd = 1e-6, .cptp = 1e-6});
    return {std::max(0.0, sol.primal_value), sol.primal_value, std::move(jc), std::move(sol)};
}

struct CapacityBounds {
    double q1;
    double epsilon;
    double lower;
    double upper;
    Index d_c;
};

/// Q1 <= Q <= Q1 + e log(d_c - 1)/2 + h(e/2) + e log d_c + (1 + e/2) h(e/(2 + e)).
/// The log(d_c - 1) term is taken as zero when d_c = 1.
inline CapacityBounds capacity_bounds(double q1, double epsilon, Index d_c) {
    if (!(epsilon >= 0.0)) throw DomainError("capacity_bounds: epsilon must be >= 0");
    if (d_c < 1) throw DomainError("capacity_bounds: d_c must be >= 1");
    const double e = epsilon;
    const double log_dc1 = d_c > 1 ? std::log2(static_cast<double>(d_c - 1)) : 0.0;
    const double slack = e * log_dc1 / 2.0 + binary_entropy(std::min(1.0, e / 2.0)) +
                         e * std::log2(static_cast<double>(d_c)) + (1.0 + e / 2.0) * binary_entropy(e / (2.0 + e));
    return {q1, e, q1, q1 + slack, d_c};
}

/// Bounds with epsilon from epsilon_degradable_sdp.
inline CapacityBounds capacity_bounds(const KrausChannel& ch, double q1, const sdp::SolverOptions& opt = {}) {
    const auto eps = epsilon_degradable_sdp(ch, opt);
    return capacity_bounds(q1, eps.epsilon, static_cast<Index>(ch.kraus().size()));
}

struct Interval {
    double lower;
    double upper;
};

/// [q1 - s, q1 + s] with s = e log d_b + (2 + e) h(e/(2 + e)).
inline Interval eps_close_bound(double epsilon, double q1, Index d_b) {
    if (!(epsilon >= 0.0)) throw DomainError("eps_close_bound: epsilon must be >= 0");
    if (d_b < 1) throw DomainError("eps_close_bound: d_b must be >= 1");
    const double s =
        epsilon * std::log2(static_cast<double>(d_b)) + (2.0 + epsilon) * binary_entropy(epsilon / (2.0 + epsilon));
    return {q1 - s, q1 + s};
}

/// max(0, 1 - h(p) - p log2 3), the single-letter coherent information of the
/// qubit depolarizing channel with error probability p.
inline double depolarizing_q1(double p) {
    return std::max(0.0, 1.0 - binary_entropy(p) - p * std::log2(3.0));
}

}  // namespace qsdp::problems
