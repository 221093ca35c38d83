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
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "qsdp/error.hpp"
#include "qsdp/sdp/embedding.hpp"

namespace qsdp::sdp {

/// SDPA sparse problem: min c^T x  s.t.  sum_i x_i F_i - F_0 >= 0.
/// The value of the originating problem is scale * (c^T x) + offset.
struct SdpaProblem {
    StandardForm form;  // b = -c, C = -F_0, A_i = -F_i
    double scale = 1.0;
    double offset = 0.0;
};

namespace detail {

inline std::string fmt17(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace detail

/// Writes the .dat-s text. Diagonal blocks are written with negative sizes.
inline void write_sdpa(std::ostream& os, const StandardForm& f, double scale = 1.0, double offset = 0.0) {
    os << "* qsdp objective_scale " << detail::fmt17(scale) << " objective_offset " << detail::fmt17(offset) << "\n";
    os << f.num_constraints() << "\n" << f.num_blocks() << "\n";
    for (std::size_t k = 0; k < f.num_blocks(); ++k)
        os << (k ? " " : "") << (f.blocks[k].diagonal ? -f.blocks[k].size : f.blocks[k].size);
    os << "\n";
    for (Index i = 0; i < f.num_constraints(); ++i) os << (i ? " " : "") << detail::fmt17(-f.b(i));
    os << "\n";
    auto emit = [&](Index mat, std::size_t k, const auto& m) {
        const Index n = f.blocks[k].size;
        for (Index i = 0; i < n; ++i)
            for (Index j = i; j < (f.blocks[k].diagonal ? i + 1 : n); ++j) {
                const double v = -m(i, j);
                if (v != 0.0) os << mat << " " << k + 1 << " " << i + 1 << " " << j + 1 << " " << detail::fmt17(v) << "\n";
            }
    };
    for (std::size_t k = 0; k < f.num_blocks(); ++k) emit(0, k, f.c[k]);
    for (Index i = 0; i < f.num_constraints(); ++i)
        for (std::size_t k = 0; k < f.num_blocks(); ++k) {
            const Index n = f.blocks[k].size;
            emit(i + 1, k, Eigen::Map<const RealMatrix>(f.a[k].col(i).data(), n, n));
        }
}

/// Exports the embedded form of p. Returns the number of blocks written.
inline std::size_t export_sdpa(const SdpProblem& p, const std::string& path) {
    const EmbeddedProblem ep = embed(p);
    if (!ep.embedding.equalities_consistent) throw ValidationError("export_sdpa: equality constraints are inconsistent");
    std::ofstream out(path);
    if (!out) throw IoError("export_sdpa: cannot open '" + path + "' for writing");
    // The SDPA objective is -b^T y; the original value is scale * b^T y + offset.
    write_sdpa(out, ep.form, -ep.embedding.objective_scale, ep.embedding.objective_offset);
    out.flush();
    if (!out) throw IoError("export_sdpa: write to '" + path + "' failed");
    return ep.form.num_blocks();
}

/// Parses .dat-s text. Errors carry the 1-based line number.
inline SdpaProblem read_sdpa(std::istream& is) {
    SdpaProblem out;
    std::string line;
    int lineno = 0;
    int stage = 0;  // 0: m, 1: nblocks, 2: block sizes, 3: c vector, 4: entries
    Index m = 0;
    std::size_t nblocks = 0;
    std::vector<double> cvec;
    auto clean = [](std::string s) {
        for (char& ch : s)
            if (ch == ',' || ch == '(' || ch == ')' || ch == '{' || ch == '}') ch = ' ';
        return s;
    };
    auto fail = [&](const std::string& msg) { throw ParseError(msg, lineno); };

    while (std::getline(is, line)) {
        ++lineno;
        if (!line.empty() && (line[0] == '"' || line[0] == '*')) {
            if (stage == 0) {
                std::istringstream hs(line);
                std::string star, tag, k1, k2;
                double v1 = 0, v2 = 0;
                if ((hs >> star >> tag >> k1 >> v1 >> k2 >> v2) && tag == "qsdp" && k1 == "objective_scale" &&
                    k2 == "objective_offset") {
                    out.scale = v1;
                    out.offset = v2;
                }
            }
            continue;
        }
        std::istringstream ls(clean(line));
        if (stage == 0) {
            if (!(ls >> m)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                fail("expected the number of constraints");
            }
            if (m < 0) fail("negative number of constraints");
            stage = 1;
        } else if (stage == 1) {
            long nb = 0;
            if (!(ls >> nb)) {
                if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
                fail("expected the number of blocks");
            }
            if (nb <= 0) fail("number of blocks must be positive");
            nblocks = static_cast<std::size_t>(nb);
            stage = 2;
        } else if (stage == 2) {
            long sz = 0;
            while (out.form.blocks.size() < nblocks && (ls >> sz)) {
                if (sz == 0) fail("block size 0");
                out.form.blocks.push_back({static_cast<Index>(std::labs(sz)), sz < 0});
            }
            if (out.form.blocks.size() < nblocks) fail("expected " + std::to_string(nblocks) + " block sizes");
            stage = 3;
        } else if (stage == 3) {
            double v = 0;
            while (static_cast<Index>(cvec.size()) < m && (ls >> v)) cvec.push_back(v);
            if (static_cast<Index>(cvec.size()) < m) fail("expected " + std::to_string(m) + " objective coefficients");
            out.form.b.resize(m);
            for (Index i = 0; i < m; ++i) out.form.b(i) = -cvec[static_cast<std::size_t>(i)];
            for (const auto& blk : out.form.blocks) {
                out.form.c.push_back(RealMatrix::Zero(blk.size, blk.size));
                out.form.a.push_back(RealMatrix::Zero(blk.size * blk.size, m));
            }
            stage = 4;
        } else {
            if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
            long mat = 0, blk = 0, i = 0, j = 0;
            double v = 0;
            if (!(ls >> mat >> blk >> i >> j >> v)) fail("expected 'matno blkno i j value'");
            if (mat < 0 || mat > m) fail("matrix number out of range");
            if (blk < 1 || static_cast<std::size_t>(blk) > nblocks) fail("block number out of range");
            const auto& spec = out.form.blocks[static_cast<std::size_t>(blk - 1)];
            if (i < 1 || j < 1 || i > spec.size || j > spec.size) fail("entry index out of range");
            if (spec.diagonal && i != j) fail("off-diagonal entry in a diagonal block");
            const Index r = i - 1, c = j - 1, n = spec.size;
            if (mat == 0) {
                auto& cm = out.form.c[static_cast<std::size_t>(blk - 1)];
                cm(r, c) = -v;
                cm(c, r) = -v;
            } else {
                auto& am = out.form.a[static_cast<std::size_t>(blk - 1)];
                am(c * n + r, mat - 1) = -v;
                am(r * n + c, mat - 1) = -v;
            }
        }
    }
    if (stage < 3 || (stage == 3 && m > 0)) throw ParseError("unexpected end of file", lineno);
    if (stage == 3) {
        out.form.b.resize(0);
        for (const auto& blk : out.form.blocks) {
            out.form.c.push_back(RealMatrix::Zero(blk.size, blk.size));
            out.form.a.push_back(RealMatrix::Zero(blk.size * blk.size, 0));
        }
    }
    return out;
}

inline SdpaProblem read_sdpa_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("read_sdpa: cannot open '" + path + "'");
    return read_sdpa(in);
}

}  // namespace qsdp::sdp
