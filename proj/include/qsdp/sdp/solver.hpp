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
#include <iomanip>
#include <limits>
#include <ostream>
#include <string>
#include <vector>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "qsdp/linalg.hpp"
#include "qsdp/sdp/embedding.hpp"

namespace qsdp::sdp {

enum class Status { optimal, infeasible, unbounded, max_iter, numerical_failure };

inline const char* to_string(Status s) {
    switch (s) {
        case Status::optimal: return "optimal";
        case Status::infeasible: return "infeasible";
        case Status::unbounded: return "unbounded";
        case Status::max_iter: return "max_iter";
        case Status::numerical_failure: return "numerical_failure";
    }
    return "unknown";
}

struct SolverOptions {
    double tol_gap = 1e-8;
    double tol_feas = 1e-8;
    int max_iter = 200;
    double step_fraction = 0.98;
    std::ostream* log = nullptr;  // iteration log when non-null
};

/// Iterate of the standard-form pair. primal_obj = <C, X>, dual_obj = b^T y.
struct StandardSolution {
    Status status = Status::numerical_failure;
    RealVector y;
    std::vector<RealMatrix> x;
    std::vector<RealMatrix> s;
    double primal_obj = 0.0;
    double dual_obj = 0.0;
    double primal_infeas = 0.0;
    double dual_infeas = 0.0;
    int iterations = 0;
    std::string message;
};

namespace detail {

inline double frob_dot(const RealMatrix& a, const RealMatrix& b) { return (a.array() * b.array()).sum(); }

/// A(X)_i = <A_i, X>.
inline RealVector apply_a(const StandardForm& f, const std::vector<RealMatrix>& x) {
    RealVector r = RealVector::Zero(f.num_constraints());
    for (std::size_t k = 0; k < f.num_blocks(); ++k)
        r += f.a[k].transpose() * Eigen::Map<const RealVector>(x[k].data(), x[k].size());
    return r;
}

/// sum_i y_i A_i for block k.
inline RealMatrix apply_at(const StandardForm& f, std::size_t k, const RealVector& y) {
    const Index n = f.blocks[k].size;
    RealVector v = f.a[k] * y;
    return Eigen::Map<const RealMatrix>(v.data(), n, n);
}

inline RealMatrix sym(const RealMatrix& m) { return 0.5 * (m + m.transpose()); }

/// Largest alpha with X + alpha dX >= 0 (infinity when unbounded).
inline double max_step(const Eigen::LLT<RealMatrix>& llt, const RealMatrix& dx) {
    const RealMatrix half = llt.matrixL().solve(dx);
    const RealMatrix w = llt.matrixL().solve(half.transpose());
    const Eigen::SelfAdjointEigenSolver<RealMatrix> es(sym(w), Eigen::EigenvaluesOnly);
    const double lmin = es.eigenvalues()(0);
    return lmin >= 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lmin;
}

}  // namespace detail

/// Infeasible-start primal-dual path following with the HKM direction and a
/// Mehrotra predictor-corrector.
inline StandardSolution solve_standard(const StandardForm& f, const SolverOptions& opt) {
    using detail::frob_dot;
    using detail::sym;
    const std::size_t nb = f.num_blocks();
    const Index m = f.num_constraints();
    StandardSolution sol;

    Index ntot = 0;
    double cnorm = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
        ntot += f.blocks[k].size;
        cnorm += f.c[k].squaredNorm();
    }
    cnorm = std::sqrt(cnorm);
    const double bnorm = f.b.norm();

    if (nb == 0) {
        sol.y = RealVector::Zero(m);
        sol.status = m == 0 || bnorm == 0.0 ? Status::optimal : Status::unbounded;
        return sol;
    }

    // Initial point.
    std::vector<RealMatrix> x(nb), s(nb);
    RealVector y = RealVector::Zero(m);
    for (std::size_t k = 0; k < nb; ++k) {
        const Index n = f.blocks[k].size;
        const double rn = std::sqrt(static_cast<double>(n));
        double xi = std::max(10.0, rn);
        double amax = 0.0;
        for (Index i = 0; i < m; ++i) {
            const double an = f.a[k].col(i).norm();
            amax = std::max(amax, an);
            xi = std::max(xi, n * (1.0 + std::abs(f.b(i))) / (1.0 + an));
        }
        const double eta = std::max({10.0, rn, (1.0 + std::max(amax, f.c[k].norm())) / rn});
        x[k] = xi * RealMatrix::Identity(n, n);
        s[k] = eta * RealMatrix::Identity(n, n);
    }

    StandardSolution best;
    double best_merit = std::numeric_limits<double>::infinity();
    int stalls = 0;

    auto record = [&](int it, double pobj, double dobj, double pinf, double dinf) {
        const double scale = std::max(1.0, 0.5 * (std::abs(pobj) + std::abs(dobj)));
        const double merit = std::max({pinf, dinf, std::abs(pobj - dobj) / scale});
        if (merit < best_merit) {
            best_merit = merit;
            best.y = y;
            best.x = x;
            best.s = s;
            best.primal_obj = pobj;
            best.dual_obj = dobj;
            best.primal_infeas = pinf;
            best.dual_infeas = dinf;
            best.iterations = it;
        }
    };

    if (opt.log) {
        *opt.log << "  it        primal          dual           gap      pinf      dinf   step_p  step_d\n";
    }

    double alpha_p = 0.0, alpha_d = 0.0;
    for (int it = 0;; ++it) {
        const RealVector rp = f.b - detail::apply_a(f, x);
        std::vector<RealMatrix> rd(nb);
        double rdn = 0.0, pobj = 0.0, xs = 0.0, trx = 0.0;
        for (std::size_t k = 0; k < nb; ++k) {
            rd[k] = f.c[k] - detail::apply_at(f, k, y) - s[k];
            rdn += rd[k].squaredNorm();
            pobj += frob_dot(f.c[k], x[k]);
            xs += frob_dot(x[k], s[k]);
            trx += x[k].trace();
        }
        const double dobj = f.b.dot(y);
        const double pinf = rp.norm() / (1.0 + bnorm);
        const double dinf = std::sqrt(rdn) / (1.0 + cnorm);
        const double gap = std::abs(pobj - dobj);
        const double scale = std::max(1.0, 0.5 * (std::abs(pobj) + std::abs(dobj)));
        record(it, pobj, dobj, pinf, dinf);

        if (opt.log) {
            *opt.log << std::setw(4) << it << std::scientific << std::setprecision(6) << std::setw(14) << pobj
                     << std::setw(14) << dobj << std::setprecision(2) << std::setw(10) << gap << std::setw(10) << pinf
                     << std::setw(10) << dinf << std::fixed << std::setprecision(3) << std::setw(8) << alpha_p
                     << std::setw(8) << alpha_d << "\n";
            opt.log->unsetf(std::ios::floatfield);
        }

        if (pinf <= opt.tol_feas && dinf <= opt.tol_feas && gap <= opt.tol_gap * scale) {
            best = StandardSolution{};
            best.status = Status::optimal;
            best.y = y;
            best.x = x;
            best.s = s;
            best.primal_obj = pobj;
            best.dual_obj = dobj;
            best.primal_infeas = pinf;
            best.dual_infeas = dinf;
            best.iterations = it;
            return best;
        }
        // Diverging iterates certify infeasibility of one side.
        if (trx > 1e12 * (1.0 + cnorm) && pinf > 10 * opt.tol_feas) {
            best.status = Status::infeasible;
            best.message = "primal iterate diverged; constraints appear infeasible";
            best.iterations = it;
            return best;
        }
        if (dobj > 1e10 * (1.0 + cnorm) && dinf <= 1e-6) {
            best.status = Status::unbounded;
            best.message = "objective diverged along a feasible ray";
            best.iterations = it;
            return best;
        }
        if (it >= opt.max_iter) {
            best.status = Status::max_iter;
            best.message = "iteration limit reached";
            return best;
        }

        const double mu = xs / static_cast<double>(ntot);

        // Factorizations and the Schur complement.
        std::vector<RealMatrix> sinv(nb);
        std::vector<Eigen::LLT<RealMatrix>> lx(nb), ls(nb);
        RealMatrix schur = RealMatrix::Zero(m, m);
        bool broke = false;
        for (std::size_t k = 0; k < nb && !broke; ++k) {
            const Index n = f.blocks[k].size;
            ls[k].compute(s[k]);
            lx[k].compute(x[k]);
            if (ls[k].info() != Eigen::Success || lx[k].info() != Eigen::Success) {
                broke = true;
                break;
            }
            sinv[k] = sym(ls[k].solve(RealMatrix::Identity(n, n)));
            RealMatrix gmat(n * n, m);
            for (Index j = 0; j < m; ++j) {
                Eigen::Map<const RealMatrix> aj(f.a[k].col(j).data(), n, n);
                Eigen::Map<RealMatrix> gj(gmat.col(j).data(), n, n);
                gj.noalias() = x[k] * aj * sinv[k];
            }
            schur.noalias() += f.a[k].transpose() * gmat;
        }
        if (broke) {
            best.status = Status::numerical_failure;
            best.message = "Cholesky factorization of an iterate failed at iteration " + std::to_string(it);
            return best;
        }
        schur = sym(schur);
        Eigen::LLT<RealMatrix> lm(schur);
        double reg = 0.0;
        const double dmax = m > 0 ? schur.diagonal().cwiseAbs().maxCoeff() : 1.0;
        for (int attempt = 0; lm.info() != Eigen::Success && attempt < 6; ++attempt) {
            reg = (reg == 0.0 ? 1e-14 : reg * 100.0) * std::max(1.0, dmax);
            lm.compute(schur + reg * RealMatrix::Identity(m, m));
        }
        if (lm.info() != Eigen::Success) {
            best.status = Status::numerical_failure;
            best.message = "Schur complement is not positive definite at iteration " + std::to_string(it);
            return best;
        }

        // X Rd S^{-1} is shared by both solves.
        std::vector<RealMatrix> xrds(nb);
        for (std::size_t k = 0; k < nb; ++k) xrds[k] = x[k] * rd[k] * sinv[k];
        const RealVector a_xrds = detail::apply_a(f, xrds);

        auto direction = [&](const std::vector<RealMatrix>& rc, RealVector& dy, std::vector<RealMatrix>& dx,
                             std::vector<RealMatrix>& ds) {
            std::vector<RealMatrix> rcs(nb);
            for (std::size_t k = 0; k < nb; ++k) rcs[k] = rc[k] * sinv[k];
            const RealVector rhs = f.b - detail::apply_a(f, rcs) + a_xrds;
            dy = lm.solve(rhs);
            dx.resize(nb);
            ds.resize(nb);
            for (std::size_t k = 0; k < nb; ++k) {
                ds[k] = rd[k] - detail::apply_at(f, k, dy);
                dx[k] = sym(rcs[k] - x[k] * ds[k] * sinv[k]) - x[k];
            }
        };
        auto steps = [&](const std::vector<RealMatrix>& dx, const std::vector<RealMatrix>& ds, double& ap,
                         double& ad) {
            ap = 1.0;
            ad = 1.0;
            for (std::size_t k = 0; k < nb; ++k) {
                ap = std::min(ap, opt.step_fraction * detail::max_step(lx[k], dx[k]));
                ad = std::min(ad, opt.step_fraction * detail::max_step(ls[k], ds[k]));
            }
        };

        // Predictor.
        std::vector<RealMatrix> rc(nb);
        for (std::size_t k = 0; k < nb; ++k) rc[k] = RealMatrix::Zero(f.blocks[k].size, f.blocks[k].size);
        RealVector dy;
        std::vector<RealMatrix> dx, ds;
        direction(rc, dy, dx, ds);
        double ap = 0.0, ad = 0.0;
        steps(dx, ds, ap, ad);
        double xs_aff = 0.0;
        for (std::size_t k = 0; k < nb; ++k) xs_aff += frob_dot(x[k] + ap * dx[k], s[k] + ad * ds[k]);
        const double mu_aff = xs_aff / static_cast<double>(ntot);
        const double sigma = std::clamp(std::pow(mu_aff / mu, 3.0), 0.0, 1.0);

        // Corrector.
        for (std::size_t k = 0; k < nb; ++k) {
            const Index n = f.blocks[k].size;
            rc[k] = sigma * mu * RealMatrix::Identity(n, n) - dx[k] * ds[k];
        }
        direction(rc, dy, dx, ds);
        steps(dx, ds, ap, ad);
        alpha_p = ap;
        alpha_d = ad;

        for (std::size_t k = 0; k < nb; ++k) {
            x[k] = sym(x[k] + ap * dx[k]);
            s[k] = sym(s[k] + ad * ds[k]);
        }
        y += ad * dy;

        stalls = (ap < 1e-8 && ad < 1e-8) ? stalls + 1 : 0;
        if (stalls >= 3) {
            best.status = Status::numerical_failure;
            best.message = "step lengths collapsed at iteration " + std::to_string(it);
            return best;
        }
    }
}

}  // namespace qsdp::sdp
