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
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/sdp/embedding.hpp"
#include "qsdp/sdp/problem.hpp"
#include "qsdp/sdp/solver.hpp"

namespace qsdp::sdp {

/// Result of solve(). primal_value is the objective at the returned point and
/// dual_value the bound certified by the dual iterate.
struct SdpSolution {
    Status status = Status::numerical_failure;
    Sense sense = Sense::minimize;
    double primal_value = 0.0;
    double dual_value = 0.0;
    double gap = 0.0;
    std::map<std::string, ComplexMatrix> matrices;  // hermitian_psd and hermitian variables
    std::map<std::string, double> scalars;          // free_real variables
    int iterations = 0;
    double primal_feas = 0.0;
    double dual_feas = 0.0;
    std::vector<double> psd_constraint_min_eig;
    double min_psd_eigenvalue = 0.0;  // over PSD variables and PSD constraints
    std::string message;

    bool optimal() const noexcept { return status == Status::optimal; }

    const ComplexMatrix& matrix(const std::string& name) const {
        auto it = matrices.find(name);
        if (it == matrices.end()) throw ValidationError("SdpSolution: no matrix variable '" + name + "'");
        return it->second;
    }

    double scalar(const std::string& name) const {
        auto it = scalars.find(name);
        if (it == scalars.end()) throw ValidationError("SdpSolution: no scalar variable '" + name + "'");
        return it->second;
    }
};

/// Evaluates an affine expression at the variable values of a solution.
inline ComplexMatrix evaluate(const SdpProblem& p, const AffineExpr& e, const SdpSolution& sol) {
    ComplexMatrix r = e.constant_part();
    for (const auto& t : e.terms()) {
        const auto& v = p.variable(t.var);
        if (v.kind == VarKind::free_real) {
            ComplexMatrix x(1, 1);
            x(0, 0) = sol.scalar(v.name);
            r += t.map(x);
        } else {
            r += t.map(sol.matrix(v.name));
        }
    }
    return r;
}

namespace detail {

inline void fill_values(const SdpProblem& p, const RealEmbedding& emb, const RealVector& z, SdpSolution& sol) {
    const auto& vars = p.variables();
    sol.min_psd_eigenvalue = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < vars.size(); ++i) {
        const auto& lay = emb.layout[i];
        if (vars[i].kind == VarKind::free_real) {
            sol.scalars[vars[i].name] = z(lay.offset);
            continue;
        }
        ComplexMatrix x = from_coordinates(vars[i].dim, z.segment(lay.offset, lay.count));
        if (vars[i].kind == VarKind::hermitian_psd)
            sol.min_psd_eigenvalue = std::min(sol.min_psd_eigenvalue, min_eigenvalue(x));
        sol.matrices[vars[i].name] = std::move(x);
    }
    for (const auto& c : p.psd_constraints()) {
        const double e = min_eigenvalue(hermitian_part(evaluate(p, c.expr, sol)));
        sol.psd_constraint_min_eig.push_back(e);
        sol.min_psd_eigenvalue = std::min(sol.min_psd_eigenvalue, e);
    }
    if (!std::isfinite(sol.min_psd_eigenvalue)) sol.min_psd_eigenvalue = 0.0;
}

}  // namespace detail

inline SdpSolution solve(const SdpProblem& p, const SolverOptions& opt = {}) {
    const EmbeddedProblem ep = embed(p);
    const RealEmbedding& emb = ep.embedding;
    SdpSolution sol;
    sol.sense = p.sense();
    if (!emb.equalities_consistent) {
        sol.status = Status::infeasible;
        std::ostringstream os;
        os << "equality constraints are inconsistent (residual " << emb.equality_residual << ")";
        sol.message = os.str();
        return sol;
    }
    if (emb.unbounded_direction) {
        sol.status = Status::unbounded;
        sol.message = "objective improves along a direction no constraint restricts";
        return sol;
    }
    const StandardSolution st = solve_standard(ep.form, opt);
    sol.status = st.status;
    sol.iterations = st.iterations;
    sol.message = st.message;
    sol.primal_feas = st.dual_infeas;
    sol.dual_feas = st.primal_infeas;
    if (st.y.size() != ep.form.num_constraints()) return sol;
    sol.primal_value = emb.objective_scale * st.dual_obj + emb.objective_offset;
    sol.dual_value = emb.objective_scale * st.primal_obj + emb.objective_offset;
    sol.gap = std::abs(sol.primal_value - sol.dual_value);
    detail::fill_values(p, emb, emb.coordinates(st.y), sol);
    return sol;
}

struct DualityReport {
    bool ok = true;
    double violation = 0.0;  // > 0 when the dual bound is on the wrong side
    std::string message;
};

/// Weak duality: for minimization the dual bound may not exceed the primal
/// value, for maximization it may not fall below it.
inline DualityReport check_duality(const SdpSolution& sol, double tol = 1e-7) {
    DualityReport r;
    r.violation = sol.sense == Sense::minimize ? sol.dual_value - sol.primal_value : sol.primal_value - sol.dual_value;
    const double gap_err = std::abs(sol.gap - std::abs(sol.primal_value - sol.dual_value));
    std::ostringstream os;
    if (r.violation > tol) {
        r.ok = false;
        os << "weak duality violated by " << r.violation << " (primal " << sol.primal_value << ", dual "
           << sol.dual_value << ")";
    }
    if (gap_err > 1e-12 * std::max(1.0, sol.gap)) {
        r.ok = false;
        os << (os.tellp() > 0 ? "; " : "") << "reported gap " << sol.gap << " differs from |primal - dual|";
    }
    r.message = r.ok ? "ok" : os.str();
    return r;
}

}  // namespace qsdp::sdp
