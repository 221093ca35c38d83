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

#include <cstddef>
#include <functional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"

namespace qsdp::sdp {

enum class VarKind {
    hermitian_psd,  // Hermitian matrix constrained to be PSD
    hermitian,      // unconstrained Hermitian matrix
    free_real,      // unconstrained real scalar
};

enum class Sense { minimize, maximize };

/// Handle of a variable inside one SdpProblem.
struct VarId {
    std::size_t index = 0;
    friend bool operator==(VarId, VarId) = default;
};

struct Variable {
    std::string name;
    VarKind kind;
    Index dim;  // 1 for free_real
};

/// Real-linear map taking a variable's value (a 1x1 matrix for scalars) to a
/// square matrix.
using LinearMap = std::function<ComplexMatrix(const ComplexMatrix&)>;

struct Term {
    VarId var;
    LinearMap map;
};

/// constant + sum_t map_t(var_t), a square matrix of size dim.
class AffineExpr {
public:
    explicit AffineExpr(Index dim) : dim_(dim), constant_(ComplexMatrix::Zero(dim, dim)) {}

    static AffineExpr constant(const ComplexMatrix& c) {
        require_square(c, "AffineExpr::constant");
        AffineExpr e(c.rows());
        e.constant_ = c;
        return e;
    }

    AffineExpr& add(VarId v, LinearMap map) {
        terms_.push_back({v, std::move(map)});
        return *this;
    }

    /// += v; the variable must have the same dimension as the expression.
    AffineExpr& add(VarId v) {
        return add(v, [](const ComplexMatrix& x) { return x; });
    }

    /// += c * v.
    AffineExpr& add(VarId v, Complex c) {
        return add(v, [c](const ComplexMatrix& x) -> ComplexMatrix { return c * x; });
    }

    /// += x * coeff for a scalar variable x.
    AffineExpr& add_scalar(VarId v, const ComplexMatrix& coeff) {
        return add(v, [coeff](const ComplexMatrix& x) -> ComplexMatrix { return x(0, 0).real() * coeff; });
    }

    AffineExpr& add_constant(const ComplexMatrix& c) {
        if (c.rows() != dim_ || c.cols() != dim_) throw DimensionError("AffineExpr: constant size mismatch");
        constant_ += c;
        return *this;
    }

    Index dim() const noexcept { return dim_; }
    const ComplexMatrix& constant_part() const noexcept { return constant_; }
    const std::vector<Term>& terms() const noexcept { return terms_; }

private:
    Index dim_;
    ComplexMatrix constant_;
    std::vector<Term> terms_;
};

struct ObjectiveTerm {
    VarId var;
    ComplexMatrix coeff;  // contributes Re Tr(coeff^dagger X); 1x1 for scalars
};

struct Constraint {
    AffineExpr expr;
    std::string label;
};

class SdpProblem;

/// Accumulates variables, objective and constraints; build() validates and
/// freezes the result.
class SdpBuilder {
public:
    VarId add_variable(std::string name, VarKind kind, Index dim = 1) {
        if (kind == VarKind::free_real) dim = 1;
        if (dim < 1) throw DimensionError("SdpBuilder: variable dimension must be >= 1");
        for (const auto& v : vars_)
            if (v.name == name) throw ValidationError("SdpBuilder: duplicate variable name '" + name + "'");
        vars_.push_back({std::move(name), kind, dim});
        return VarId{vars_.size() - 1};
    }

    VarId hermitian_psd(std::string name, Index dim) { return add_variable(std::move(name), VarKind::hermitian_psd, dim); }
    VarId hermitian(std::string name, Index dim) { return add_variable(std::move(name), VarKind::hermitian, dim); }
    VarId free_real(std::string name) { return add_variable(std::move(name), VarKind::free_real, 1); }

    SdpBuilder& sense(Sense s) {
        sense_ = s;
        return *this;
    }

    /// Objective += Re Tr(coeff^dagger X).
    SdpBuilder& objective(VarId v, ComplexMatrix coeff) {
        objective_.push_back({v, std::move(coeff)});
        return *this;
    }

    /// Objective += c * x for a scalar variable.
    SdpBuilder& objective(VarId v, double c) {
        ComplexMatrix m(1, 1);
        m(0, 0) = c;
        return objective(v, std::move(m));
    }

    SdpBuilder& objective_constant(double c) {
        objective_constant_ += c;
        return *this;
    }

    /// expr == 0.
    SdpBuilder& equal(AffineExpr expr, std::string label = {}) {
        equalities_.push_back({std::move(expr), std::move(label)});
        return *this;
    }

    /// expr == rhs.
    SdpBuilder& equal(AffineExpr expr, const ComplexMatrix& rhs, std::string label = {}) {
        expr.add_constant(-rhs);
        return equal(std::move(expr), std::move(label));
    }

    /// expr >= 0 in the PSD order.
    SdpBuilder& psd(AffineExpr expr, std::string label = {}) {
        psd_.push_back({std::move(expr), std::move(label)});
        return *this;
    }

    SdpProblem build() const;

private:
    friend class SdpProblem;
    std::vector<Variable> vars_;
    Sense sense_ = Sense::minimize;
    std::vector<ObjectiveTerm> objective_;
    double objective_constant_ = 0.0;
    std::vector<Constraint> equalities_;
    std::vector<Constraint> psd_;
};

/// Immutable block-structured Hermitian SDP.
class SdpProblem {
public:
    const std::vector<Variable>& variables() const noexcept { return vars_; }
    const Variable& variable(VarId v) const { return vars_.at(v.index); }
    Sense sense() const noexcept { return sense_; }
    const std::vector<ObjectiveTerm>& objective() const noexcept { return objective_; }
    double objective_constant() const noexcept { return objective_constant_; }
    const std::vector<Constraint>& equalities() const noexcept { return equalities_; }
    const std::vector<Constraint>& psd_constraints() const noexcept { return psd_; }

    VarId find(const std::string& name) const {
        for (std::size_t i = 0; i < vars_.size(); ++i)
            if (vars_[i].name == name) return VarId{i};
        throw ValidationError("SdpProblem: no variable named '" + name + "'");
    }

private:
    friend class SdpBuilder;
    SdpProblem() = default;

    std::vector<Variable> vars_;
    Sense sense_ = Sense::minimize;
    std::vector<ObjectiveTerm> objective_;
    double objective_constant_ = 0.0;
    std::vector<Constraint> equalities_;
    std::vector<Constraint> psd_;
};

namespace detail {

inline void validate_expr(const AffineExpr& e, const std::vector<Variable>& vars, const std::string& what) {
    if (hermiticity_residual(e.constant_part()) > 1e-10)
        throw ValidationError(what + ": constant matrix is not Hermitian");
    for (const auto& t : e.terms()) {
        if (t.var.index >= vars.size()) throw ValidationError(what + ": reference to unknown variable");
        const auto& v = vars[t.var.index];
        const ComplexMatrix probe = t.map(ComplexMatrix::Zero(v.dim, v.dim));
        if (probe.rows() != e.dim() || probe.cols() != e.dim()) {
            std::ostringstream os;
            os << what << ": term in variable '" << v.name << "' yields " << probe.rows() << "x"
               << probe.cols() << ", expected " << e.dim() << "x" << e.dim();
            throw DimensionError(os.str());
        }
    }
}

}  // namespace detail

inline SdpProblem SdpBuilder::build() const {
    SdpProblem p;
    for (const auto& t : objective_) {
        if (t.var.index >= vars_.size()) throw ValidationError("objective: reference to unknown variable");
        const auto& v = vars_[t.var.index];
        if (t.coeff.rows() != v.dim || t.coeff.cols() != v.dim)
            throw DimensionError("objective: coefficient of '" + v.name + "' has the wrong size");
        if (hermiticity_residual(t.coeff) > 1e-10)
            throw ValidationError("objective: coefficient of '" + v.name + "' is not Hermitian");
    }
    for (std::size_t i = 0; i < equalities_.size(); ++i)
        detail::validate_expr(equalities_[i].expr, vars_, "equality " + std::to_string(i));
    for (std::size_t i = 0; i < psd_.size(); ++i)
        detail::validate_expr(psd_[i].expr, vars_, "psd constraint " + std::to_string(i));
    p.vars_ = vars_;
    p.sense_ = sense_;
    p.objective_ = objective_;
    p.objective_constant_ = objective_constant_;
    p.equalities_ = equalities_;
    p.psd_ = psd_;
    return p;
}

}  // namespace qsdp::sdp
