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

#include <string>
#include <vector>

#include "qsdp/error.hpp"
#include "qsdp/problems/common.hpp"
#include "qsdp/quantum.hpp"
#include "qsdp/sdp/sdp.hpp"

namespace qsdp::problems {

/// n hypotheses with priors and states of a common dimension.
class DiscriminationInstance {
public:
    DiscriminationInstance(ProbabilityDistribution priors, std::vector<DensityOperator> states)
        : priors_(std::move(priors)), states_(std::move(states)) {
        if (states_.empty()) throw ValidationError("DiscriminationInstance: no states");
        if (priors_.size() != states_.size())
            throw DimensionError("DiscriminationInstance: " + std::to_string(priors_.size()) + " priors for " +
                                 std::to_string(states_.size()) + " states");
        for (const auto& s : states_)
            if (s.dim() != states_.front().dim()) throw DimensionError("DiscriminationInstance: state dimensions differ");
    }

    const ProbabilityDistribution& priors() const noexcept { return priors_; }
    const std::vector<DensityOperator>& states() const noexcept { return states_; }
    std::size_t size() const noexcept { return states_.size(); }
    Index dim() const noexcept { return states_.front().dim(); }

private:
    ProbabilityDistribution priors_;
    std::vector<DensityOperator> states_;
};

struct DiscriminationResult {
    double p_star;
    Povm povm;
    double born_value;  // sum_i p_i Tr(E_i sigma_i) for the returned POVM
    sdp::SdpSolution solution;
};

/// Success-probability SDP over E_1..E_{n-1}, with E_n = I - sum_j E_j:
/// maximize p_n + sum_j Tr(E_j (p_j s_j - p_n s_n)) subject to E_j >= 0 and
/// I - sum_j E_j >= 0.
inline sdp::SdpProblem discrimination_problem(const DiscriminationInstance& inst) {
    const std::size_t n = inst.size();
    const Index d = inst.dim();
    const auto& p = inst.priors();
    const ComplexMatrix last = p[n - 1] * inst.states()[n - 1].matrix();
    sdp::SdpBuilder b;
    b.sense(sdp::Sense::maximize).objective_constant(p[n - 1]);
    sdp::AffineExpr rest = sdp::AffineExpr::constant(identity(d));
    for (std::size_t j = 0; j + 1 < n; ++j) {
        const auto e = b.hermitian_psd("E" + std::to_string(j + 1), d);
        b.objective(e, (p[j] * inst.states()[j].matrix() - last).eval());
        rest.add(e, Complex(-1.0));
    }
    if (n > 1) b.psd(std::move(rest), "E" + std::to_string(n));
    return b.build();
}

inline DiscriminationResult discriminate_sdp(const DiscriminationInstance& inst, const sdp::SolverOptions& opt = {}) {
    const std::size_t n = inst.size();
    const Index d = inst.dim();
    const sdp::SdpProblem prob = discrimination_problem(inst);
    std::ostringstream what;
    what << "discriminate_sdp (n=" << n << ", d=" << d << ")";
    sdp::SdpSolution sol = solve_or_throw(prob, opt, what.str());

    // Project the effects onto the PSD cone, then rescale so that the
    // remainder I - sum E_j is PSD as well.
    std::vector<ComplexMatrix> effects;
    ComplexMatrix sum = ComplexMatrix::Zero(d, d);
    for (std::size_t j = 0; j + 1 < n; ++j) {
        ComplexMatrix e = hermitian_function(sol.matrix("E" + std::to_string(j + 1)),
                                             [](double x) { return std::max(x, 0.0); });
        sum += e;
        effects.push_back(std::move(e));
    }
    const double top = n > 1 ? max_eigenvalue(hermitian_part(sum)) : 0.0;
    if (top > 1.0) {
        for (auto& e : effects) e /= top;
        sum /= top;
    }
    effects.push_back(hermitian_part(identity(d) - sum));
    Povm povm(effects);
    double born = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        born += inst.priors()[i] * (povm[i].matrix() * inst.states()[i].matrix()).trace().real();
    return {sol.primal_value, std::move(povm), born, std::move(sol)};
}

/// 1/2 (1 + ||p1 s1 - p2 s2||_1).
inline double helstrom_bound(double p1, const DensityOperator& s1, double p2, const DensityOperator& s2) {
    if (s1.dim() != s2.dim()) throw DimensionError("helstrom_bound: state dimensions differ");
    return 0.5 * (1.0 + trace_norm(p1 * s1.matrix() - p2 * s2.matrix()));
}

}  // namespace qsdp::problems
