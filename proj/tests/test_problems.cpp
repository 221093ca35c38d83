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

// Discrimination, fidelity, channel norms and capacity bounds.

#include "support.hpp"

namespace qsdp::problems {
namespace {

using testing::h2;
using testing::matrix_near;

DensityOperator ket_state(const Ket& k) { return DensityOperator::pure(k); }

/// Qubit fidelity from F^2 = Tr(rho sigma) + 2 sqrt(det rho det sigma).
double qubit_fidelity(const ComplexMatrix& r, const ComplexMatrix& s) {
    const double overlap = (r * s).trace().real();
    const double dr = std::max(0.0, r.determinant().real()), ds = std::max(0.0, s.determinant().real());
    return std::sqrt(overlap + 2.0 * std::sqrt(dr * ds));
}

// Discrimination -------------------------------------------------------------

TEST(Discrimination, OrthogonalPairAnyPriors) {
    for (double q : {0.1, 0.5, 0.8}) {
        const DiscriminationInstance inst(ProbabilityDistribution({q, 1 - q}),
                                          {ket_state(Ket::basis(2, 0)), ket_state(Ket::basis(2, 1))});
        const auto r = discriminate_sdp(inst);
        EXPECT_NEAR(r.p_star, 1.0, 1e-8);
        EXPECT_NEAR(helstrom_bound(q, inst.states()[0], 1 - q, inst.states()[1]), 1.0, 1e-14);
    }
}

TEST(Discrimination, PairwiseOrthogonalQutritStates) {
    std::vector<DensityOperator> s;
    for (Index i = 0; i < 3; ++i) s.push_back(ket_state(Ket::basis(3, i)));
    for (const auto& p : {std::vector<double>{0.2, 0.3, 0.5}, std::vector<double>{0.6, 0.3, 0.1}}) {
        const auto r = discriminate_sdp(DiscriminationInstance(ProbabilityDistribution(p), s));
        EXPECT_NEAR(r.p_star, 1.0, 1e-8);
    }
    const auto r2 = discriminate_sdp(DiscriminationInstance(ProbabilityDistribution({0.4, 0.6}), {s[0], s[2]}));
    EXPECT_NEAR(r2.p_star, 1.0, 1e-8);
}

TEST(Discrimination, ZeroVersusPlus) {
    const auto r = discriminate_sdp(DiscriminationInstance(ProbabilityDistribution({0.5, 0.5}),
                                                           {ket_state(Ket::basis(2, 0)), ket_state(Ket::plus())}));
    EXPECT_NEAR(r.p_star, 0.5 * (1.0 + 1.0 / std::sqrt(2.0)), 1e-8);
    EXPECT_NEAR(r.born_value, r.p_star, 1e-7);
}

TEST(Discrimination, HelstromSpecialCases) {
    Rng rng(70);
    const auto rho = random_density(3, rng);
    EXPECT_NEAR(helstrom_bound(0.5, rho, 0.5, rho), 0.5, 1e-14);
    EXPECT_NEAR(helstrom_bound(0.3, rho, 0.7, rho), 0.5 * (1.0 + 0.4), 1e-14);
    EXPECT_NEAR(helstrom_bound(0.5, ket_state(Ket::plus()), 0.5, ket_state(Ket::minus())), 1.0, 1e-14);
}

TEST(Discrimination, RandomPairsMatchHelstrom) {
    Rng rng(71);
    for (int trial = 0; trial < 25; ++trial) {
        const Index d = 2 + trial % 2;
        const auto p = random_distribution(2, rng);
        const auto s1 = random_density(d, rng, 1 + trial % 2), s2 = random_density(d, rng);
        const DiscriminationInstance inst(p, {s1, s2});
        const auto r = discriminate_sdp(inst);
        EXPECT_NEAR(r.p_star, helstrom_bound(p[0], s1, p[1], s2), 1e-6);
        if (d == 2) {
            // Independent qubit oracle: eigenvalues of the weighted difference in closed form.
            const auto [lo, hi] = testing::eig2(p[0] * s1.matrix() - p[1] * s2.matrix());
            EXPECT_NEAR(r.p_star, 0.5 * (1.0 + std::abs(lo) + std::abs(hi)), 1e-6);
        }
    }
}

TEST(Discrimination, MultiStateBoundsAndPovm) {
    Rng rng(72);
    for (int trial = 0; trial < 5; ++trial) {
        const auto p = random_distribution(4, rng);
        std::vector<DensityOperator> s;
        for (int i = 0; i < 4; ++i) s.push_back(random_density(3, rng));
        const auto r = discriminate_sdp(DiscriminationInstance(p, s));
        EXPECT_GE(r.p_star, *std::max_element(p.values().begin(), p.values().end()) - 1e-8);
        EXPECT_LE(r.p_star, 1.0 + 1e-8);
        EXPECT_NEAR(r.born_value, r.p_star, 1e-6);
        EXPECT_EQ(r.povm.size(), 4u);
    }
}

TEST(Discrimination, InstanceValidation) {
    EXPECT_THROW(DiscriminationInstance(ProbabilityDistribution({1.0}), {}), ValidationError);
    EXPECT_THROW(DiscriminationInstance(ProbabilityDistribution({0.5, 0.5}), {DensityOperator::maximally_mixed(2)}),
                 DimensionError);
    EXPECT_THROW(DiscriminationInstance(ProbabilityDistribution({0.5, 0.5}),
                                        {DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(3)}),
                 DimensionError);
}

// Fidelity -------------------------------------------------------------------

TEST(Fidelity, PureStatesOverlap) {
    Rng rng(73);
    for (int trial = 0; trial < 5; ++trial) {
        const Ket a = random_pure(3, rng), b = random_pure(3, rng);
        const double expect = std::abs(a.amplitudes().dot(b.amplitudes()));
        EXPECT_NEAR(fidelity_closed(ket_state(a), ket_state(b)).value, expect, 1e-7);
    }
    const auto zero = ket_state(Ket::basis(2, 0)), plus = ket_state(Ket::plus());
    EXPECT_NEAR(fidelity_sdp(zero, plus, Side::primal).value, 1.0 / std::sqrt(2.0), 1e-7);
    EXPECT_NEAR(fidelity_sdp(zero, plus, Side::dual).value, 1.0 / std::sqrt(2.0), 1e-7);
}

TEST(Fidelity, BhattacharyyaOverlap) {
    const std::vector<double> p{0.5, 0.3, 0.2}, q{0.1, 0.6, 0.3};
    double expect = 0.0;
    for (std::size_t i = 0; i < 3; ++i) expect += std::sqrt(p[i] * q[i]);
    const auto r = testing::diag_state(p), s = testing::diag_state(q);
    EXPECT_NEAR(fidelity_closed(r, s).value, expect, 1e-10);
    EXPECT_NEAR(fidelity_sdp(r, s, Side::primal).value, expect, 1e-6);
    EXPECT_NEAR(fidelity_sdp(r, s, Side::dual).value, expect, 1e-6);
}

TEST(Fidelity, SelfAndMaximallyMixed) {
    Rng rng(74);
    const auto rho = random_density(3, rng);
    EXPECT_NEAR(fidelity_closed(rho, rho).value, 1.0, 1e-7);
    const auto mm = DensityOperator::maximally_mixed(2);
    EXPECT_NEAR(fidelity_sdp(mm, mm, Side::primal).value, 1.0, 1e-7);
    EXPECT_NEAR(fidelity_sdp(mm, mm, Side::dual).value, 1.0, 1e-7);
}

TEST(Fidelity, MixedAgainstPure) {
    Rng rng(75);
    for (int trial = 0; trial < 5; ++trial) {
        const auto rho = random_density(3, rng);
        const Ket psi = random_pure(3, rng);
        const double expect = std::sqrt((psi.amplitudes().adjoint() * rho.matrix() * psi.amplitudes())(0, 0).real());
        EXPECT_NEAR(fidelity_closed(rho, ket_state(psi)).value, expect, 1e-7);
        EXPECT_NEAR(fidelity_sdp(rho, ket_state(psi), Side::primal).value, expect, 1e-6);
        EXPECT_NEAR(fidelity_sdp(rho, ket_state(psi), Side::dual).value, expect, 1e-6);
    }
}

TEST(Fidelity, ThreeRoutesAgreeOnRandomPairs) {
    Rng rng(76);
    for (int trial = 0; trial < 25; ++trial) {
        const Index d = 2 + trial % 3;
        const auto r = random_density(d, rng), s = random_density(d, rng);
        const double closed = fidelity_closed(r, s).value;
        EXPECT_NEAR(fidelity_sdp(r, s, Side::primal).value, closed, 1e-6);
        EXPECT_NEAR(fidelity_sdp(r, s, Side::dual).value, closed, 1e-6);
        EXPECT_NEAR(fidelity_closed(s, r).value, closed, 1e-9);
        if (d == 2) {
            EXPECT_NEAR(closed, qubit_fidelity(r.matrix(), s.matrix()), 1e-9);
        }
    }
}

TEST(Fidelity, MultiplicativeOnProducts) {
    Rng rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        const auto r1 = random_density(2, rng), s1 = random_density(2, rng);
        const auto r2 = random_density(3, rng), s2 = random_density(3, rng);
        const DensityOperator r(kron(r1.matrix(), r2.matrix())), s(kron(s1.matrix(), s2.matrix()));
        EXPECT_NEAR(fidelity_closed(r, s).value, fidelity_closed(r1, s1).value * fidelity_closed(r2, s2).value, 1e-6);
    }
}

// Channel norms --------------------------------------------------------------

Superoperator depol_difference(double lambda) {
    return superop_difference(0.5, identity_channel(2), depolarizing_qubit(lambda));
}

TEST(OneNorm, DepolarizingDifference) {
    for (double l : {-1.0 / 3.0, 0.0, 0.5, 0.9}) EXPECT_NEAR(superop_one_norm(depol_difference(l)).value, (1 - l) / 2, 1e-9);
}

TEST(OneNorm, QuditDepolarizing) {
    for (double l : {-0.1, 0.3}) {
        const auto d = superop_difference(0.5, identity_channel(3), depolarizing_qudit(3, l));
        EXPECT_NEAR(superop_one_norm(d).value, (1 - l) * 2.0 / 3.0, 1e-7);
    }
}

TEST(OneNorm, WernerHolevo) {
    for (Index d : {2, 3}) {
        const auto diff = superop_difference(0.5, werner_holevo_1(d), werner_holevo_2(d));
        EXPECT_NEAR(superop_one_norm(diff).value, 2.0 / static_cast<double>(d + 1), 1e-7);
    }
}

TEST(OneNorm, MaximizerAttainsValue) {
    Rng rng(78);
    const auto d = superop_difference(0.4, random_channel(2, 2, 2, rng), random_channel(2, 2, 2, rng));
    const auto r = superop_one_norm(d);
    EXPECT_NEAR(trace_norm(d.apply(r.maximizer.projector())), r.value, 1e-12);
    // No sampled pure input does better.
    for (int i = 0; i < 200; ++i) EXPECT_LE(trace_norm(d.apply(random_pure(2, rng).projector())), r.value + 1e-9);
}

TEST(Diamond, NamedChannelsHaveUnitNorm) {
    const std::vector<KrausChannel> chans{identity_channel(2), erasure(2, 0.3), depolarizing_qubit(0.2),
                                          dephasing(0.4), werner_holevo_1(3), werner_holevo_2(3),
                                          measure_computational(), depolarizing_qudit(3, 0.5)};
    for (const auto& ch : chans) {
        const auto s = to_superoperator(ch);
        EXPECT_NEAR(diamond_norm_sdp(s, Side::primal).value, 1.0, 1e-6);
        EXPECT_NEAR(diamond_norm_sdp(s, Side::dual).value, 1.0, 1e-6);
    }
}

TEST(Diamond, DepolarizingDifference) {
    for (double l : {-1.0 / 3.0, 0.0, 0.5, 0.9}) {
        const auto d = depol_difference(l);
        const double p = diamond_norm_sdp(d, Side::primal).value, q = diamond_norm_sdp(d, Side::dual).value;
        EXPECT_NEAR(p, 0.75 * (1 - l), 1e-7);
        EXPECT_NEAR(q, 0.75 * (1 - l), 1e-7);
        EXPECT_NEAR(p, q, 1e-7);
    }
}

TEST(Diamond, QuditAndWernerHolevo) {
    const double l = 0.3;
    const auto dq = superop_difference(0.5, identity_channel(3), depolarizing_qudit(3, l));
    EXPECT_NEAR(diamond_norm_sdp(dq, Side::primal).value, (1 - l) * 8.0 / 9.0, 1e-6);
    EXPECT_NEAR(diamond_norm_sdp(dq, Side::dual).value, (1 - l) * 8.0 / 9.0, 1e-6);
    for (Index d : {2, 3}) {
        const auto dw = superop_difference(0.5, werner_holevo_1(d), werner_holevo_2(d));
        EXPECT_NEAR(diamond_norm_sdp(dw, Side::primal).value, 1.0, 1e-6);
    }
}

TEST(Diamond, CompletelyDepolarizingDifference) {
    for (Index d : {2, 3}) {
        const double dd = static_cast<double>(d);
        // N = id - T with T(rho) = Tr(rho) I/d.
        const auto n = superop_difference(0.5, identity_channel(d), depolarizing_qudit(d, 0.0));
        const Superoperator nn(d, d, 2.0 * n.transfer());
        EXPECT_NEAR(diamond_norm_cp_difference(nn).value, 2 * (dd * dd - 1) / (dd * dd), 1e-6);
        // The explicit feasible point Z = ((d^2 - 1)/d) |phi_d><phi_d| with mu = (d^2 - 1)/d^2.
        const ComplexMatrix z = (dd * dd - 1) / dd * Ket::max_entangled(d).projector();
        EXPECT_GE(min_eigenvalue(z - nn.choi()), -1e-12);
        const double mu = (dd * dd - 1) / (dd * dd);
        EXPECT_GE(min_eigenvalue(mu * identity(d) - partial_trace(z, SystemDims{d, d}, {1})), -1e-12);
    }
}

TEST(Diamond, ZeroMap) {
    const Superoperator zero(2, 2, ComplexMatrix::Zero(4, 4));
    EXPECT_NEAR(diamond_norm_cp_difference(zero).value, 0.0, 1e-7);
    EXPECT_NEAR(diamond_norm_sdp(zero, Side::primal).value, 0.0, 1e-7);
}

TEST(Diamond, RandomDifferencesThreeRoutes) {
    Rng rng(79);
    for (int trial = 0; trial < 6; ++trial) {
        const Index din = 2, dout = 2 + trial % 2;
        const auto b1 = random_channel(din, dout, 2, rng), b2 = random_channel(din, dout, 2, rng);
        const auto d = superop_difference(0.5, b1, b2);
        const double p = diamond_norm_sdp(d, Side::primal).value;
        EXPECT_NEAR(diamond_norm_sdp(d, Side::dual).value, p, 1e-6);
        EXPECT_NEAR(diamond_norm_cp_difference(d).value, p, 1e-6);
        // Maximally entangled probe gives a lower bound: (D (x) I)(phi) = J(D)/d_in.
        EXPECT_GE(p + 1e-7, trace_norm(d.choi()) / static_cast<double>(din));
        EXPECT_GE(p + 1e-7, superop_one_norm(d).value);
    }
}

TEST(ChannelDiscrimination, DepolarizingProbabilities) {
    for (double l : {-1.0 / 3.0, 0.0, 0.5, 0.9}) {
        const auto r = channel_discrimination(0.5, identity_channel(2), depolarizing_qubit(l));
        EXPECT_NEAR(r.q_star, (3 - l) / 4, 1e-6);
        EXPECT_NEAR(r.s_star, (7 - 3 * l) / 8, 1e-6);
        EXPECT_GE(r.s_star, r.q_star - 1e-7);
    }
    const auto r = channel_discrimination(0.5, identity_channel(2), depolarizing_qubit(-1.0 / 3.0));
    EXPECT_NEAR(r.q_star, 5.0 / 6.0, 1e-6);
    EXPECT_NEAR(r.s_star, 1.0, 1e-6);
}

TEST(ChannelDiscrimination, WernerHolevo) {
    for (Index d : {2, 3}) {
        const auto r = channel_discrimination(0.5, werner_holevo_1(d), werner_holevo_2(d));
        EXPECT_NEAR(r.q_star, 0.5 + 1.0 / static_cast<double>(d + 1), 1e-6);
        EXPECT_NEAR(r.s_star, 1.0, 1e-6);
    }
}

TEST(ChannelDiscrimination, IdenticalChannelsAreIndistinguishable) {
    const auto r = channel_discrimination(0.5, dephasing(0.2), dephasing(0.2));
    EXPECT_NEAR(r.q_star, 0.5, 1e-7);
    EXPECT_NEAR(r.s_star, 0.5, 1e-7);
}

TEST(ChannelDiscrimination, ProbabilitiesInRange) {
    Rng rng(80);
    for (int trial = 0; trial < 5; ++trial) {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        const double t = u(rng);
        const auto r = channel_discrimination(t, random_channel(2, 2, 2, rng), random_channel(2, 2, 3, rng));
        EXPECT_GE(r.q_star, 0.5 - 1e-9);
        EXPECT_LE(r.s_star, 1.0 + 1e-7);
        EXPECT_GE(r.s_star, r.q_star - 1e-7);
    }
    EXPECT_THROW(channel_discrimination(1.5, dephasing(0.1), dephasing(0.2)), DomainError);
}

// Capacity -------------------------------------------------------------------

TEST(CoherentInformation, ClosedForms) {
    for (double q : {0.0, 0.1, 0.3, 0.5})
        EXPECT_NEAR(coherent_information(dephasing(q), DensityOperator::maximally_mixed(2)), 1 - h2(q), 1e-9);
    for (Index da : {2, 3})
        for (double p : {0.0, 0.25, 0.5, 0.7})
            EXPECT_NEAR(coherent_information(erasure(da, p), DensityOperator::maximally_mixed(da)),
                        (1 - 2 * p) * std::log2(static_cast<double>(da)), 1e-9);
    Rng rng(81);
    const auto rho = random_density(3, rng);
    EXPECT_NEAR(coherent_information(identity_channel(3), rho), von_neumann_entropy(rho), 1e-9);
}

TEST(EpsilonDegradable, DegradableFamiliesVanish) {
    for (double q : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        const auto e = epsilon_degradable_sdp(dephasing(q));
        EXPECT_LE(e.epsilon, 1e-6) << q;
        const auto b = capacity_bounds(1 - h2(q), e.epsilon, 2);
        EXPECT_LE(b.upper - b.lower, 1e-5) << q;
        EXPECT_NEAR(b.lower, 1 - h2(q), 1e-12);
    }
    for (double p : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        const auto ch = erasure(2, p);
        const auto e = epsilon_degradable_sdp(ch);
        EXPECT_LE(e.epsilon, 1e-6) << p;
        const auto b = capacity_bounds(1 - 2 * p, e.epsilon, static_cast<Index>(ch.kraus().size()));
        EXPECT_LE(b.upper - b.lower, 1e-5) << p;
    }
}

TEST(EpsilonDegradable, DegradingMapIsChannel) {
    const auto e = epsilon_degradable_sdp(erasure(2, 0.25));
    EXPECT_EQ(e.degrading_choi.dim_in(), 3);
    EXPECT_EQ(e.degrading_choi.dim_out(), 3);
    EXPECT_LE(e.degrading_choi.trace_preservation_residual(), 1e-6);
}

TEST(EpsilonDegradable, DepolarizingIsNotDegradable) {
    const double p = 0.1;
    const auto ch = depolarizing_qubit_p(p);
    const auto e = epsilon_degradable_sdp(ch);
    EXPECT_GT(e.epsilon, 1e-4);
    // Reference value from an independent conic solver on the exported SDPA file.
    EXPECT_NEAR(e.epsilon, 0.0574101847, 1e-5);
    const auto b = capacity_bounds(depolarizing_q1(p), e.epsilon, 4);
    EXPECT_GT(b.upper, b.lower);
    EXPECT_NEAR(b.lower, 1 - h2(p) - p * std::log2(3.0), 1e-12);
}

TEST(EpsilonDegradable, BoundsFromChannelOverload) {
    const auto b = capacity_bounds(dephasing(0.3), 1 - h2(0.3));
    EXPECT_NEAR(b.upper, 1 - h2(0.3), 1e-5);
    EXPECT_EQ(b.d_c, 2);
}

TEST(CapacityBounds, Formula) {
    EXPECT_THROW(capacity_bounds(0.5, -0.1, 2), DomainError);
    const auto zero = capacity_bounds(0.4, 0.0, 3);
    EXPECT_EQ(zero.upper, zero.lower);
    const auto unit = capacity_bounds(0.4, 0.0, 1);
    EXPECT_EQ(unit.upper, 0.4);
    const double e = 0.05;
    const auto b = capacity_bounds(0.3, e, 4);
    const double expect = 0.3 + e * std::log2(3.0) / 2 + h2(e / 2) + e * 2.0 + (1 + e / 2) * h2(e / (2 + e));
    EXPECT_NEAR(b.upper, expect, 1e-14);
}

TEST(CapacityBounds, DepolarizingSingleLetter) {
    const double p = 0.05;
    EXPECT_NEAR(depolarizing_q1(p), 1 - h2(p) - p * std::log2(3.0), 1e-14);
    EXPECT_EQ(depolarizing_q1(0.3), 0.0);
}

TEST(EpsCloseBound, Values) {
    const auto z = eps_close_bound(0.0, 0.7, 3);
    EXPECT_EQ(z.lower, 0.7);
    EXPECT_EQ(z.upper, 0.7);
    const auto b = eps_close_bound(0.1, 0.5, 2);
    const double slack = 0.1 * 1.0 + 2.1 * h2(0.1 / 2.1);
    EXPECT_NEAR(b.upper, 0.5 + slack, 1e-14);
    EXPECT_NEAR(b.lower, 0.5 - slack, 1e-14);
    EXPECT_THROW(eps_close_bound(-1e-3, 0.5, 2), DomainError);
}

TEST(EpsCloseBound, SlackMonotoneInEpsilon) {
    double prev = -1.0;
    for (double e : testing::uniform_grid(0.0, 2.0, 101)) {
        const auto b = eps_close_bound(e, 0.0, 3);
        EXPECT_GE(b.upper, prev - 1e-15) << e;
        prev = b.upper;
    }
}

}  // namespace
}  // namespace qsdp::problems
