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
#include <string>
#include <vector>

#include <Eigen/QR>

#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/sdp/problem.hpp"

namespace qsdp::sdp {

/// H -> [[Re H, -Im H], [Im H, Re H]].
inline RealMatrix embed_hermitian(const ComplexMatrix& h) {
    require_square(h, "embed_hermitian");
    const Index n = h.rows();
    RealMatrix e(2 * n, 2 * n);
    e.topLeftCorner(n, n) = h.real();
    e.bottomRightCorner(n, n) = h.real();
    e.topRightCorner(n, n) = -h.imag();
    e.bottomLeftCorner(n, n) = h.imag();
    return e;
}

/// Inverse of embed_hermitian; averages the two copies and symmetrizes.
inline ComplexMatrix reconstruct_hermitian(const RealMatrix& e) {
    if (e.rows() != e.cols() || e.rows() % 2 != 0)
        throw DimensionError("reconstruct_hermitian: expected an even square matrix");
    const Index n = e.rows() / 2;
    const RealMatrix re = 0.5 * (e.topLeftCorner(n, n) + e.bottomRightCorner(n, n));
    const RealMatrix im = 0.5 * (e.bottomLeftCorner(n, n) - e.topRightCorner(n, n));
    ComplexMatrix h(n, n);
    h.real() = re;
    h.imag() = im;
    return hermitian_part(h);
}

/// Number of real coordinates of a variable.
inline Index coordinate_count(const Variable& v) { return v.kind == VarKind::free_real ? 1 : v.dim * v.dim; }

/// Orthonormal Hermitian basis: E_ii first, then for each pair i<j
/// (E_ij+E_ji)/sqrt2 and i(E_ij-E_ji)/sqrt2.
inline ComplexMatrix basis_element(Index n, Index k) {
    ComplexMatrix b = ComplexMatrix::Zero(n, n);
    if (k < n) {
        b(k, k) = 1.0;
        return b;
    }
    Index p = (k - n) / 2;
    const bool anti = ((k - n) % 2) != 0;
    Index i = 0;
    while (p >= n - 1 - i) {
        p -= n - 1 - i;
        ++i;
    }
    const Index j = i + 1 + p;
    const double s = 1.0 / std::sqrt(2.0);
    if (anti) {
        b(i, j) = Complex(0, s);
        b(j, i) = Complex(0, -s);
    } else {
        b(i, j) = s;
        b(j, i) = s;
    }
    return b;
}

inline ComplexMatrix from_coordinates(Index n, const RealVector& z) {
    ComplexMatrix x(n, n);
    const double s = 1.0 / std::sqrt(2.0);
    for (Index i = 0; i < n; ++i) x(i, i) = z(i);
    Index k = n;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, k += 2) {
            x(i, j) = Complex(s * z(k), s * z(k + 1));
            x(j, i) = std::conj(x(i, j));
        }
    return x;
}

inline RealVector to_coordinates(const ComplexMatrix& x) {
    const Index n = x.rows();
    RealVector z(n * n);
    const double r2 = std::sqrt(2.0);
    for (Index i = 0; i < n; ++i) z(i) = x(i, i).real();
    Index k = n;
    for (Index i = 0; i < n; ++i)
        for (Index j = i + 1; j < n; ++j, k += 2) {
            const Complex v = 0.5 * (x(i, j) + std::conj(x(j, i)));
            z(k) = r2 * v.real();
            z(k + 1) = r2 * v.imag();
        }
    return z;
}

struct BlockSpec {
    Index size = 0;
    bool diagonal = false;
    friend bool operator==(const BlockSpec&, const BlockSpec&) = default;
};

/// max b^T y  s.t.  C - sum_i y_i A_i >= 0, with the block-diagonal primal
/// min <C, X>  s.t.  <A_i, X> = b_i, X >= 0.
struct StandardForm {
    std::vector<BlockSpec> blocks;
    std::vector<RealMatrix> c;  // per block, size x size
    std::vector<RealMatrix> a;  // per block, (size*size) x m; column i is vec(A_i)
    RealVector b;

    Index num_constraints() const noexcept { return b.size(); }
    std::size_t num_blocks() const noexcept { return blocks.size(); }
};

enum class BlockSource { psd_variable, psd_constraint, scalar_group };

struct BlockOrigin {
    BlockSource source;
    std::size_t index;   // variable or constraint index; unused for scalar_group
    Index complex_dim;   // Hermitian size before embedding
};

struct CoordinateLayout {
    Index offset = 0;
    Index count = 0;
};

/// Everything needed to map a standard-form point back to the original problem.
struct RealEmbedding {
    std::vector<CoordinateLayout> layout;  // per variable
    Index num_coordinates = 0;
    RealVector z0;           // particular solution of the equalities
    RealMatrix null_basis;   // z = z0 + null_basis * y
    double objective_scale = 1.0;   // original objective = scale * b^T y + offset
    double objective_offset = 0.0;
    std::vector<BlockOrigin> origins;
    bool equalities_consistent = true;
    double equality_residual = 0.0;
    bool unbounded_direction = false;  // free direction improving the objective with no constraint on it

    RealVector coordinates(const RealVector& y) const { return z0 + null_basis * y; }
};

struct EmbeddedProblem {
    StandardForm form;
    RealEmbedding embedding;
};

namespace detail {

struct ComplexBlock {
    ComplexMatrix constant;
    // coordinate index -> coefficient matrix
    std::map<Index, ComplexMatrix> coeffs;
};

inline void accumulate_expr(const AffineExpr& e, const SdpProblem& p, const std::vector<CoordinateLayout>& layout,
                            ComplexBlock& out, const std::string& what) {
    out.constant = e.constant_part();
    for (const auto& t : e.terms()) {
        const auto& v = p.variables()[t.var.index];
        const auto& lay = layout[t.var.index];
        for (Index k = 0; k < lay.count; ++k) {
            const ComplexMatrix bk = basis_element(v.dim, k);
            const ComplexMatrix f = t.map(bk);
            if (hermiticity_residual(f) > 1e-9 * (1.0 + max_abs(f)))
                throw ValidationError(what + ": expression is not Hermitian-valued");
            auto it = out.coeffs.find(lay.offset + k);
            if (it == out.coeffs.end())
                out.coeffs.emplace(lay.offset + k, f);
            else
                it->second += f;
        }
    }
}

}  // namespace detail

/// Lowers a Hermitian SDP to the real standard form. Equalities are
/// eliminated through a QR null-space parametrization, Hermitian blocks are
/// embedded as real symmetric blocks of twice the size and all 1x1 blocks are
/// gathered into one diagonal block.
inline EmbeddedProblem embed(const SdpProblem& p) {
    EmbeddedProblem out;
    RealEmbedding& emb = out.embedding;
    const auto& vars = p.variables();

    Index nz = 0;
    for (const auto& v : vars) {
        emb.layout.push_back({nz, coordinate_count(v)});
        nz += coordinate_count(v);
    }
    emb.num_coordinates = nz;

    // Objective over coordinates.
    RealVector cfull = RealVector::Zero(nz);
    for (const auto& t : p.objective()) {
        const auto& v = vars[t.var.index];
        const auto& lay = emb.layout[t.var.index];
        if (v.kind == VarKind::free_real) {
            cfull(lay.offset) += t.coeff(0, 0).real();
            continue;
        }
        for (Index k = 0; k < lay.count; ++k)
            cfull(lay.offset + k) += (t.coeff.adjoint() * basis_element(v.dim, k)).trace().real();
    }

    // Equalities as real rows over the upper triangle.
    std::vector<RealVector> rows;
    std::vector<double> rhs;
    for (std::size_t ci = 0; ci < p.equalities().size(); ++ci) {
        detail::ComplexBlock blk;
        detail::accumulate_expr(p.equalities()[ci].expr, p, emb.layout, blk, "equality " + std::to_string(ci));
        const Index m = p.equalities()[ci].expr.dim();
        for (Index i = 0; i < m; ++i)
            for (Index j = i; j < m; ++j)
                for (int part = 0; part < (i == j ? 1 : 2); ++part) {
                    RealVector r = RealVector::Zero(nz);
                    for (const auto& [k, f] : blk.coeffs) r(k) = part == 0 ? f(i, j).real() : f(i, j).imag();
                    const Complex c0 = blk.constant(i, j);
                    rows.push_back(std::move(r));
                    rhs.push_back(-(part == 0 ? c0.real() : c0.imag()));
                }
    }

    if (rows.empty()) {
        emb.z0 = RealVector::Zero(nz);
        emb.null_basis = RealMatrix::Identity(nz, nz);
    } else {
        RealMatrix aeq(static_cast<Index>(rows.size()), nz);
        RealVector beq(static_cast<Index>(rows.size()));
        for (std::size_t r = 0; r < rows.size(); ++r) {
            aeq.row(static_cast<Index>(r)) = rows[r].transpose();
            beq(static_cast<Index>(r)) = rhs[r];
        }
        // A^T P = Q R: the trailing columns of Q span ker A.
        Eigen::ColPivHouseholderQR<RealMatrix> qr(aeq.cols(), aeq.rows());
        qr.setThreshold(1e-10);
        qr.compute(aeq.transpose());
        const Index rank = qr.rank();
        const RealMatrix q = qr.householderQ();
        const RealVector pb = qr.colsPermutation().transpose() * beq;
        const RealVector u = qr.matrixR()
                                 .topLeftCorner(rank, rank)
                                 .template triangularView<Eigen::Upper>()
                                 .transpose()
                                 .solve(pb.head(rank));
        emb.z0 = q.leftCols(rank) * u;
        emb.null_basis = q.rightCols(nz - rank);
        emb.equality_residual = (aeq * emb.z0 - beq).cwiseAbs().maxCoeff();
        emb.equalities_consistent = emb.equality_residual <= 1e-9 * (1.0 + beq.cwiseAbs().maxCoeff());
    }

    // Collect PSD blocks.
    std::vector<detail::ComplexBlock> cblocks;
    std::vector<BlockOrigin> corigins;
    for (std::size_t vi = 0; vi < vars.size(); ++vi) {
        if (vars[vi].kind != VarKind::hermitian_psd) continue;
        detail::ComplexBlock blk;
        blk.constant = ComplexMatrix::Zero(vars[vi].dim, vars[vi].dim);
        for (Index k = 0; k < emb.layout[vi].count; ++k)
            blk.coeffs.emplace(emb.layout[vi].offset + k, basis_element(vars[vi].dim, k));
        cblocks.push_back(std::move(blk));
        corigins.push_back({BlockSource::psd_variable, vi, vars[vi].dim});
    }
    for (std::size_t ci = 0; ci < p.psd_constraints().size(); ++ci) {
        detail::ComplexBlock blk;
        detail::accumulate_expr(p.psd_constraints()[ci].expr, p, emb.layout, blk, "psd constraint " + std::to_string(ci));
        corigins.push_back({BlockSource::psd_constraint, ci, p.psd_constraints()[ci].expr.dim()});
        cblocks.push_back(std::move(blk));
    }

    const Index ny0 = emb.null_basis.cols();
    auto& form = out.form;
    std::vector<double> scalar_c;
    std::vector<RealVector> scalar_a;

    for (std::size_t bi = 0; bi < cblocks.size(); ++bi) {
        const auto& blk = cblocks[bi];
        const Index m = corigins[bi].complex_dim;
        ComplexMatrix f0 = blk.constant;
        const Index kc = static_cast<Index>(blk.coeffs.size());
        RealMatrix fre(m * m, kc), fim(m * m, kc), nsub(kc, ny0);
        Index col = 0;
        for (const auto& [k, f] : blk.coeffs) {
            f0 += emb.z0(k) * f;
            for (Index j = 0; j < m; ++j)
                for (Index i = 0; i < m; ++i) {
                    fre(j * m + i, col) = f(i, j).real();
                    fim(j * m + i, col) = f(i, j).imag();
                }
            nsub.row(col) = emb.null_basis.row(k);
            ++col;
        }
        const RealMatrix gre = fre * nsub;
        const RealMatrix gim = fim * nsub;
        if (m == 1) {
            scalar_c.push_back(f0(0, 0).real());
            scalar_a.push_back(-gre.row(0).transpose());
            continue;
        }
        form.blocks.push_back({2 * m, false});
        emb.origins.push_back(corigins[bi]);
        RealMatrix c = embed_hermitian(hermitian_part(f0));
        form.c.push_back(0.5 * (c + c.transpose()));
        RealMatrix a(4 * m * m, ny0);
        ComplexMatrix g(m, m);
        for (Index i = 0; i < ny0; ++i) {
            for (Index jj = 0; jj < m; ++jj)
                for (Index ii = 0; ii < m; ++ii) g(ii, jj) = Complex(gre(jj * m + ii, i), gim(jj * m + ii, i));
            RealMatrix e = embed_hermitian(g);
            e = (-0.5 * (e + e.transpose())).eval();
            a.col(i) = Eigen::Map<const RealVector>(e.data(), e.size());
        }
        form.a.push_back(std::move(a));
    }
    if (!scalar_c.empty()) {
        const Index s = static_cast<Index>(scalar_c.size());
        form.blocks.push_back({s, true});
        emb.origins.push_back({BlockSource::scalar_group, 0, s});
        RealMatrix c = RealMatrix::Zero(s, s);
        RealMatrix a = RealMatrix::Zero(s * s, ny0);
        for (Index i = 0; i < s; ++i) {
            c(i, i) = scalar_c[static_cast<std::size_t>(i)];
            a.row(i * s + i) = scalar_a[static_cast<std::size_t>(i)].transpose();
        }
        form.c.push_back(std::move(c));
        form.a.push_back(std::move(a));
    }

    // Objective on y; directions untouched by every block are fixed at zero.
    const double sign = p.sense() == Sense::maximize ? 1.0 : -1.0;
    const RealVector bfull = sign * (emb.null_basis.transpose() * cfull);
    emb.objective_scale = sign;
    emb.objective_offset = cfull.dot(emb.z0) + p.objective_constant();

    double amax = 0.0;
    for (const auto& a : form.a) amax = std::max(amax, a.size() ? a.cwiseAbs().maxCoeff() : 0.0);
    std::vector<Index> keep;
    for (Index i = 0; i < ny0; ++i) {
        double nrm = 0.0;
        for (const auto& a : form.a) nrm = std::max(nrm, a.col(i).cwiseAbs().maxCoeff());
        if (nrm > 1e-12 * std::max(1.0, amax)) {
            keep.push_back(i);
        } else if (std::abs(bfull(i)) > 1e-10 * std::max(1.0, bfull.cwiseAbs().maxCoeff())) {
            emb.unbounded_direction = true;
        }
    }
    const Index ny = static_cast<Index>(keep.size());
    RealMatrix nb(nz, ny);
    form.b.resize(ny);
    for (Index i = 0; i < ny; ++i) {
        nb.col(i) = emb.null_basis.col(keep[static_cast<std::size_t>(i)]);
        form.b(i) = bfull(keep[static_cast<std::size_t>(i)]);
    }
    if (ny != ny0) {
        for (auto& a : form.a) {
            RealMatrix r(a.rows(), ny);
            for (Index i = 0; i < ny; ++i) r.col(i) = a.col(keep[static_cast<std::size_t>(i)]);
            a = std::move(r);
        }
    }
    emb.null_basis = std::move(nb);
    return out;
}

}  // namespace qsdp::sdp
