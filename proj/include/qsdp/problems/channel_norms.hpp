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
#include <numbers>
#include <vector>

#include "qsdp/channels.hpp"
#include "qsdp/error.hpp"
#include "qsdp/problems/common.hpp"
#include "qsdp/problems/fidelity.hpp"
#include "qsdp/quantum.hpp"
#include "qsdp/random.hpp"
#include "qsdp/sdp/sdp.hpp"

namespace qsdp::problems {

struct OneNormResult {
    double value;
    Ket maximizer;
};

namespace detail {

inline double output_norm(const Superoperator& d, const Ket& psi) { return trace_norm(d.apply(psi.projector())); }

/// Ascent on psi -> ||D(psi psi^dagger)||_1. Each step moves to the top
/// eigenvector of D^dagger(sgn D(psi psi^dagger)), which never decreases the
/// objective.
inline OneNormResult ascend(const Superoperator& d, Ket psi, int max_steps = 200) {
    double f = output_norm(d, psi);
    for (int s = 0; s < max_steps; ++s) {
        const ComplexMatrix out = hermitian_part(d.apply(psi.projector()));
        const ComplexMatrix sgn = hermitian_function(out, [](double x) { return x > 0 ? 1.0 : (x < 0 ? -1.0 : 0.0); });
        const auto eig = hermitian_eigen(hermitian_part(d.apply_adjoint(sgn)));
        Ket next = Ket::normalized(eig.vectors.col(eig.vectors.cols() - 1));
        const double fn = output_norm(d, next);
        if (fn <= f + 1e-15) break;
        f = fn;
        psi = std::move(next);
    }
    return {f, std::move(psi)};
}

inline Ket bloch_ket(double theta, double phi) {
    ComplexVector v(2);
    v(0) = std::cos(theta / 2);
    v(1) = std::polar(std::sin(theta / 2), phi);
    return Ket::normalized(v);
}

}  // namespace detail

/// max over pure states of ||D(psi psi^dagger)||_1. Qubits: 200-point Fibonacci
/// sphere grid with ascent from the best grid points; larger inputs: 50 seeded
/// random restarts with ascent. A lower bound in general, exact for covariant
/// differences.
inline OneNormResult superop_one_norm(const Superoperator& d, std::uint64_t seed = 7) {
    const Index n = d.dim_in();
    if (n > 8) throw ResourceError("superop_one_norm: input dimension above 8");
    std::vector<Ket> starts;
    if (n == 1) {
        starts.push_back(Ket::basis(1, 0));
    } else if (n == 2) {
        constexpr int points = 200;
        const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
        std::vector<std::pair<double, Ket>> grid;
        for (int i = 0; i < points; ++i) {
            const double z = 1.0 - 2.0 * (i + 0.5) / points;
            Ket k = detail::bloch_ket(std::acos(z), golden * i);
            const double f = detail::output_norm(d, k);
            grid.emplace_back(f, std::move(k));
        }
        std::stable_sort(grid.begin(), grid.end(), [](const auto& a, const auto& b) { return a.first > b.first; });
        for (std::size_t i = 0; i < 5; ++i) starts.push_back(grid[i].second);
    } else {
        Rng rng(seed);
        for (int i = 0; i < 50; ++i) starts.push_back(random_pure(n, rng));
        for (Index i = 0; i < n; ++i) starts.push_back(Ket::basis(n, i));
    }
    OneNormResult best{-1.0, starts.front()};
    for (const auto& s : starts) {
        auto r = detail::ascend(d, s);
        if (r.value > best.value) best = std::move(r);
    }
    return best;
}

/// Diamond-norm SDP on the Choi matrix J (output first) of a
/// Hermiticity-preserving map.
/// primal: maximize Re Tr(J X) over [[I_b (x) rho, X], [X^dagger, I_b (x) sigma]] >= 0,
///         Tr rho = Tr sigma = 1.
/// dual:   minimize (mu + nu)/2 over [[N, -J], [-J^dagger, M]] >= 0,
///         mu I - Tr_b N >= 0, nu I - Tr_b M >= 0.
inline sdp::SdpProblem diamond_norm_problem(const Superoperator& d, Side side) {
    const Index da = d.dim_in(), db = d.dim_out(), n = da * db;
    const ComplexMatrix& j = d.choi();
    if (hermiticity_residual(j) > 1e-9 * (1.0 + max_abs(j)))
        throw ValidationError("diamond_norm_sdp: map is not Hermiticity preserving");
    const SystemDims dims{db, da};
    sdp::SdpBuilder b;
    const auto w = b.hermitian_psd("W", 2 * n);
    if (side == Side::primal) {
        const auto rho = b.hermitian("rho", da);
        const auto sigma = b.hermitian("sigma", da);
        ComplexMatrix c = ComplexMatrix::Zero(2 * n, 2 * n);
        c.topRightCorner(n, n) = 0.5 * j.adjoint();
        c.bottomLeftCorner(n, n) = 0.5 * j;
        b.sense(sdp::Sense::maximize).objective(w, c);
        const ComplexMatrix ib = identity(db);
        auto lift = [ib](const ComplexMatrix& x) -> ComplexMatrix { return -kron(ib, x); };
        b.equal(sdp::AffineExpr(n).add(w, top_left(n)).add(rho, lift), "top-left block");
        b.equal(sdp::AffineExpr(n).add(w, bottom_right(n)).add(sigma, lift), "bottom-right block");
        b.equal(sdp::AffineExpr(1).add(rho, trace_map()), scalar_matrix(1.0), "Tr rho");
        b.equal(sdp::AffineExpr(1).add(sigma, trace_map()), scalar_matrix(1.0), "Tr sigma");
    } else {
        const auto mu = b.free_real("mu");
        const auto nu = b.free_real("nu");
        b.sense(sdp::Sense::minimize).objective(mu, 0.5).objective(nu, 0.5);
        fix_off_diagonal(b, w, n, -j, "off-diagonal block");
        auto tr_top = [n, dims](const ComplexMatrix& x) -> ComplexMatrix {
            return -partial_trace(ComplexMatrix(x.topLeftCorner(n, n)), dims, {1});
        };
        auto tr_bottom = [n, dims](const ComplexMatrix& x) -> ComplexMatrix {
            return -partial_trace(ComplexMatrix(x.bottomRightCorner(n, n)), dims, {1});
        };
        b.psd(sdp::AffineExpr(da).add_scalar(mu, identity(da)).add(w, tr_top), "mu I - Tr_b N");
        b.psd(sdp::AffineExpr(da).add_scalar(nu, identity(da)).add(w, tr_bottom), "nu I - Tr_b M");
    }
    return b.build();
}

struct DiamondResult {
    double value;
    sdp::SdpSolution solution;
};

inline DiamondResult diamond_norm_sdp(const Superoperator& d, Side side, const sdp::SolverOptions& opt = {}) {
    auto sol = solve_or_throw(diamond_norm_problem(d, side), opt, "diamond_norm_sdp");
    return {sol.primal_value, std::move(sol)};
}

/// minimize 2 mu subject to mu I - Tr_b Z >= 0, Z - J >= 0, Z >= 0.
inline sdp::SdpProblem cp_difference_problem(const Superoperator& d) {
    const Index da = d.dim_in(), db = d.dim_out();
    const ComplexMatrix j = hermitian_part(d.choi());
    const SystemDims dims{db, da};
    sdp::SdpBuilder b;
    const auto z = b.hermitian_psd("Z", da * db);
    const auto mu = b.free_real("mu");
    b.sense(sdp::Sense::minimize).objective(mu, 2.0);
    auto tr = [dims](const ComplexMatrix& x) -> ComplexMatrix { return -partial_trace(x, dims, {1}); };
    b.psd(sdp::AffineExpr(da).add_scalar(mu, identity(da)).add(z, tr), "mu I - Tr_b Z");
    b.psd(sdp::AffineExpr::constant(-j).add(z), "Z - J");
    return b.build();
}

inline DiamondResult diamond_norm_cp_difference(const Superoperator& d, const sdp::SolverOptions& opt = {}) {
    auto sol = solve_or_throw(cp_difference_problem(d), opt, "diamond_norm_cp_difference");
    return {sol.primal_value, std::move(sol)};
}

struct ChannelDiscriminationResult {
    double t;
    double one_norm;
    double diamond_norm;
    double q_star;  // product-input success probability
    double s_star;  // entangled-input success probability
};

/// Discrimination of t B1 against (1-t) B2 with and without an entangled probe.
inline ChannelDiscriminationResult channel_discrimination(double t, const KrausChannel& b1, const KrausChannel& b2,
                                                          const sdp::SolverOptions& opt = {}) {
    if (!(t >= 0.0 && t <= 1.0)) throw DomainError("channel_discrimination: t must lie in [0, 1]");
    const Superoperator d = superop_difference(t, b1, b2);
    const double one = superop_one_norm(d).value;
    const double dia = diamond_norm_sdp(d, Side::primal, opt).value;
    return {t, one, dia, 0.5 * (1.0 + one), 0.5 * (1.0 + dia)};
}

}  // namespace qsdp::problems
