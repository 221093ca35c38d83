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

// Acceptance gate: prints one PASS/FAIL line per criterion and exits nonzero
// if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "json.hpp"
#include "qsdp/qsdp.hpp"

namespace {

using namespace qsdp;
using namespace qsdp::problems;

/// Accumulates checks for one criterion and remembers the worst deviation.
class Check {
public:
    void near(const std::string& what, double got, double want, double tol) {
        const double err = std::abs(got - want);
        worst_ = std::max(worst_, err);
        if (!(err <= tol)) fail(what + ": got " + fmt(got) + ", want " + fmt(want) + " +- " + fmt(tol));
    }
    void that(const std::string& what, bool ok) {
        if (!ok) fail(what);
    }
    void fail(const std::string& msg) {
        if (ok_) first_ = msg;
        ok_ = false;
        ++failures_;
    }
    bool ok() const { return ok_; }
    std::string summary() const {
        std::ostringstream os;
        if (ok_) {
            os << "max deviation " << fmt(worst_);
        } else {
            os << failures_ << " check(s) failed; first: " << first_;
        }
        return os.str();
    }
    static std::string fmt(double v) {
        std::ostringstream os;
        os.precision(10);
        os << v;
        return os.str();
    }

private:
    bool ok_ = true;
    int failures_ = 0;
    double worst_ = 0.0;
    std::string first_;
};

double h2(double p) { return p <= 0 || p >= 1 ? 0.0 : -p * std::log2(p) - (1 - p) * std::log2(1 - p); }

void criterion1(Check& c) {
    Rng rng(1001);
    for (int trial = 0; trial < 25; ++trial) {
        const Index d = 2 + trial % 2;
        const auto p = random_distribution(2, rng);
        const auto s1 = random_density(d, rng), s2 = random_density(d, rng, 1 + trial % 2);
        const double sdp = discriminate_sdp(DiscriminationInstance(p, {s1, s2})).p_star;
        c.near("random pair " + std::to_string(trial), sdp, helstrom_bound(p[0], s1, p[1], s2), 1e-6);
    }
    const auto k0 = DensityOperator::pure(Ket::basis(2, 0)), k1 = DensityOperator::pure(Ket::basis(2, 1));
    for (double q : {0.1, 0.5, 0.9})
        c.near("orthogonal pair q=" + Check::fmt(q),
               discriminate_sdp(DiscriminationInstance(ProbabilityDistribution({q, 1 - q}), {k0, k1})).p_star, 1.0,
               1e-8);
    std::vector<DensityOperator> basis;
    for (Index i = 0; i < 3; ++i) basis.push_back(DensityOperator::pure(Ket::basis(3, i)));
    c.near("orthogonal qutrit",
           discriminate_sdp(DiscriminationInstance(ProbabilityDistribution({0.2, 0.3, 0.5}), basis)).p_star, 1.0, 1e-8);
}

void criterion2(Check& c) {
    Rng rng(1002);
    for (int trial = 0; trial < 25; ++trial) {
        const Index d = 2 + trial % 3;
        const auto r = random_density(d, rng), s = random_density(d, rng);
        const double closed = fidelity_closed(r, s).value;
        c.near("primal " + std::to_string(trial), fidelity_sdp(r, s, Side::primal).value, closed, 1e-6);
        c.near("dual " + std::to_string(trial), fidelity_sdp(r, s, Side::dual).value, closed, 1e-6);
    }
    const std::vector<double> p{0.5, 0.3, 0.2}, q{0.1, 0.6, 0.3};
    double bhat = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) bhat += std::sqrt(p[i] * q[i]);
    const DensityOperator rp(ComplexMatrix(RealVector::Map(p.data(), 3).cast<Complex>().asDiagonal()));
    const DensityOperator rq(ComplexMatrix(RealVector::Map(q.data(), 3).cast<Complex>().asDiagonal()));
    c.near("Bhattacharyya closed form", fidelity_closed(rp, rq).value, bhat, 1e-10);
}

std::vector<std::pair<std::string, KrausChannel>> named_channels() {
    return {{"identity(2)", identity_channel(2)},
            {"identity(3)", identity_channel(3)},
            {"erasure(2, 0.3)", erasure(2, 0.3)},
            {"erasure(3, 0.6)", erasure(3, 0.6)},
            {"depolarizing(-1/3)", depolarizing_qubit(-1.0 / 3.0)},
            {"depolarizing(0.5)", depolarizing_qubit(0.5)},
            {"depolarizing_p(0.1)", depolarizing_qubit_p(0.1)},
            {"qudit depolarizing(3, 0.3)", depolarizing_qudit(3, 0.3)},
            {"dephasing(0.2)", dephasing(0.2)},
            {"werner_holevo_1(2)", werner_holevo_1(2)},
            {"werner_holevo_2(2)", werner_holevo_2(2)},
            {"werner_holevo_1(3)", werner_holevo_1(3)},
            {"werner_holevo_2(3)", werner_holevo_2(3)},
            {"measure", measure_computational()}};
}

void criterion3(Check& c) {
    for (const auto& [name, ch] : named_channels()) {
        const auto s = to_superoperator(ch);
        c.near(name + " primal", diamond_norm_sdp(s, Side::primal).value, 1.0, 1e-6);
        c.near(name + " dual", diamond_norm_sdp(s, Side::dual).value, 1.0, 1e-6);
    }
}

void criterion4(Check& c) {
    for (double l : {-1.0 / 3.0, 0.0, 0.5, 0.9}) {
        const std::string tag = "lambda=" + Check::fmt(l) + " ";
        const auto r = channel_discrimination(0.5, identity_channel(2), depolarizing_qubit(l));
        c.near(tag + "one-norm", r.one_norm, (1 - l) / 2, 1e-6);
        c.near(tag + "diamond", r.diamond_norm, 0.75 * (1 - l), 1e-6);
        c.near(tag + "q*", r.q_star, (3 - l) / 4, 1e-6);
        c.near(tag + "s*", r.s_star, (7 - 3 * l) / 8, 1e-6);
        if (l < 0) {
            c.near("q* at lambda=-1/3", r.q_star, 5.0 / 6.0, 1e-6);
            c.near("s* at lambda=-1/3", r.s_star, 1.0, 1e-6);
        }
    }
}

void criterion5(Check& c) {
    const Index d = 3;
    const double dd = 3.0;
    for (double l : {-0.1, 0.0, 0.4, 0.8}) {
        const auto diff = superop_difference(0.5, identity_channel(d), depolarizing_qudit(d, l));
        c.near("one-norm lambda=" + Check::fmt(l), superop_one_norm(diff).value, (1 - l) * (dd - 1) / dd, 1e-6);
        c.near("diamond lambda=" + Check::fmt(l), diamond_norm_sdp(diff, Side::primal).value,
               (1 - l) * (dd * dd - 1) / (dd * dd), 1e-6);
    }
}

void criterion6(Check& c) {
    for (Index d : {2, 3}) {
        const auto r = channel_discrimination(0.5, werner_holevo_1(d), werner_holevo_2(d));
        c.near("q* d=" + std::to_string(d), r.q_star, 0.5 + 1.0 / static_cast<double>(d + 1), 1e-6);
        c.near("s* d=" + std::to_string(d), r.s_star, 1.0, 1e-6);
    }
}

void criterion7(Check& c) {
    const auto bell = DensityOperator::pure(Ket::max_entangled(2));
    c.near("Bell", ppt_check_sdp(bell, SystemDims{2, 2}).mu_star, 0.5, 1e-7);
    for (double a : {0.0, 0.5, 0.9, 1.1, 1.5, 1.9, 2.1, 2.5})
        c.near("Horodecki alpha=" + Check::fmt(a),
               symmetric_extension_sdp(horodecki_state(a), SystemDims{3, 3}, 1, true).mu_star, horodecki_ppt_mu(a),
               1e-7);
}

void criterion8(Check& c) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto in = symmetric_extension_sdp(horodecki_state(1.5), SystemDims{3, 3}, 2, true);
    const auto out = symmetric_extension_sdp(horodecki_state(2.3), SystemDims{3, 3}, 2, true);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.that("alpha=1.5 detected (mu* = " + Check::fmt(in.mu_star) + ")", in.mu_star > tol_detect);
    c.that("alpha=2.3 undetected (mu* = " + Check::fmt(out.mu_star) + ")", out.mu_star <= tol_detect);
    c.that("runtime " + Check::fmt(secs) + " s within 300 s", secs <= 300.0);
}

/// Solves the exported SDPA file with the external conic solver script.
bool external_epsilon(const std::string& path, double& value, std::string& why) {
    const std::string py = QSDP_PYTHON;
    if (py.empty()) {
        why = "no Python interpreter configured";
        return false;
    }
    const std::string cmd = py + " " + std::string(QSDP_SOURCE_DIR) + "/tests/oracle/sdpa_cvxpy.py " + path + " 2>&1";
    FILE* pipe = ::popen(cmd.c_str(), "r");
    if (pipe == nullptr) {
        why = "cannot start the oracle script";
        return false;
    }
    std::string out;
    char buf[4096];
    std::size_t n = 0;
    while ((n = std::fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, n);
    if (::pclose(pipe) != 0) {
        why = "oracle script failed: " + out;
        return false;
    }
    try {
        value = nlohmann::json::parse(out).at("value").get<double>();
    } catch (const std::exception& e) {
        why = std::string("unreadable oracle output: ") + e.what();
        return false;
    }
    return true;
}

void criterion9(Check& c) {
    for (double q : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
        const auto ch = dephasing(q);
        const auto e = epsilon_degradable_sdp(ch);
        c.that("dephasing q=" + Check::fmt(q) + " epsilon " + Check::fmt(e.epsilon) + " <= 1e-6", e.epsilon <= 1e-6);
        const auto b = capacity_bounds(coherent_information(ch, DensityOperator::maximally_mixed(2)), e.epsilon, 2);
        c.near("dephasing lower q=" + Check::fmt(q), b.lower, 1 - h2(q), 1e-5);
        c.near("dephasing upper q=" + Check::fmt(q), b.upper, 1 - h2(q), 1e-5);
    }
    for (Index da : {2, 3}) {
        for (double p : {0.0, 0.1, 0.2, 0.3, 0.4, 0.5}) {
            const auto ch = erasure(da, p);
            const std::string tag = "erasure d=" + std::to_string(da) + " p=" + Check::fmt(p);
            const auto e = epsilon_degradable_sdp(ch);
            c.that(tag + " epsilon " + Check::fmt(e.epsilon) + " <= 1e-6", e.epsilon <= 1e-6);
            const double q1 = coherent_information(ch, DensityOperator::maximally_mixed(da));
            const auto b = capacity_bounds(q1, e.epsilon, static_cast<Index>(ch.kraus().size()));
            const double want = (1 - 2 * p) * std::log2(static_cast<double>(da));
            c.near(tag + " lower", b.lower, want, 1e-5);
            c.near(tag + " upper", b.upper, want, 1e-5);
        }
    }
    const double p = 0.1;
    const auto ch = depolarizing_qubit_p(p);
    const auto e = epsilon_degradable_sdp(ch);
    c.that("depolarizing epsilon " + Check::fmt(e.epsilon) + " > 1e-4", e.epsilon > 1e-4);
    const auto b = capacity_bounds(depolarizing_q1(p), e.epsilon, 4);
    c.that("depolarizing upper " + Check::fmt(b.upper) + " > Q1 " + Check::fmt(b.q1), b.upper > b.q1);
    const std::string path = (std::filesystem::temp_directory_path() / "qsdp_acceptance_depolarizing.dat-s").string();
    sdp::export_sdpa(epsilon_degradable_problem(ch), path);
    double ext = 0.0;
    std::string why;
    if (external_epsilon(path, ext, why)) {
        c.near("depolarizing epsilon vs external solver", e.epsilon, ext, 1e-5);
    } else {
        c.fail("external solver unavailable: " + why);
    }
    std::remove(path.c_str());
}

std::vector<std::pair<std::string, sdp::SdpProblem>> engine_instances() {
    Rng rng(1010);
    std::vector<std::pair<std::string, sdp::SdpProblem>> out;
    const auto p = random_distribution(3, rng);
    out.emplace_back("discrimination",
                     discrimination_problem(DiscriminationInstance(
                         p, {random_density(3, rng), random_density(3, rng), random_density(3, rng)})));
    const auto r = random_density(3, rng), s = random_density(3, rng);
    out.emplace_back("fidelity primal", fidelity_problem(r, s, Side::primal));
    out.emplace_back("fidelity dual", fidelity_problem(r, s, Side::dual));
    const auto d = superop_difference(0.4, random_channel(2, 2, 2, rng), random_channel(2, 2, 2, rng));
    out.emplace_back("diamond primal", diamond_norm_problem(d, Side::primal));
    out.emplace_back("diamond dual", diamond_norm_problem(d, Side::dual));
    const auto n = superop_difference(0.5, identity_channel(2), depolarizing_qudit(2, 0.0));
    out.emplace_back("cp difference", cp_difference_problem(Superoperator(2, 2, 2.0 * n.transfer())));
    out.emplace_back("ppt", ppt_problem(horodecki_state(0.5), SystemDims{3, 3}));
    out.emplace_back("extension k=2", symmetric_extension_problem(horodecki_state(1.5), SystemDims{3, 3}, 2, true));
    out.emplace_back("epsilon degradable", epsilon_degradable_problem(erasure(2, 0.3)));
    return out;
}

void criterion10(Check& c) {
    for (const auto& [name, prob] : engine_instances()) {
        const auto sol = sdp::solve(prob);
        c.that(name + " solved (" + sdp::to_string(sol.status) + ")", sol.optimal());
        const auto dr = sdp::check_duality(sol, 1e-7);
        c.that(name + " weak duality: " + dr.message, dr.ok);
        const std::string path = (std::filesystem::temp_directory_path() / "qsdp_acceptance_rt.dat-s").string();
        sdp::export_sdpa(prob, path);
        const auto back = sdp::read_sdpa_file(path);
        const auto st = sdp::solve_standard(back.form, sdp::SolverOptions{});
        c.that(name + " re-import solved", st.status == sdp::Status::optimal);
        c.near(name + " SDPA round trip", back.scale * -st.dual_obj + back.offset, sol.primal_value, 1e-6);
        std::remove(path.c_str());
    }
    Rng rng(1011);
    for (int trial = 0; trial < 20; ++trial) {
        const Index n = 1 + trial % 5;
        const ComplexMatrix g = ginibre(n, n, rng);
        const ComplexMatrix h = 0.5 * (g + g.adjoint());
        const double e1 = (sdp::reconstruct_hermitian(sdp::embed_hermitian(h)) - h).cwiseAbs().maxCoeff();
        const double e2 = (sdp::from_coordinates(n, sdp::to_coordinates(h)) - h).cwiseAbs().maxCoeff();
        c.near("embedding round trip n=" + std::to_string(n), std::max(e1, e2), 0.0, 1e-12);
    }
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<void(Check&)>>> criteria = {
        {"Helstrom agreement", criterion1},
        {"fidelity triple agreement", criterion2},
        {"diamond norm of named channels", criterion3},
        {"depolarizing discrimination", criterion4},
        {"qudit depolarizing scaling", criterion5},
        {"Werner-Holevo discrimination", criterion6},
        {"PPT level one", criterion7},
        {"symmetric extension level two", criterion8},
        {"epsilon-degradability and capacity bounds", criterion9},
        {"engine properties", criterion10},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Check c;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            criteria[i].second(c);
        } catch (const std::exception& e) {
            c.fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        failed += c.ok() ? 0 : 1;
        std::cout << (c.ok() ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << criteria[i].first << " ("
                  << c.summary() << ", " << Check::fmt(secs) << " s)" << std::endl;
    }
    return failed == 0 ? 0 : 1;
}
