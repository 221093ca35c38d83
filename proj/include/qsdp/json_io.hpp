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

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "qsdp/channels.hpp"
#include "qsdp/error.hpp"
#include "qsdp/linalg.hpp"
#include "qsdp/quantum.hpp"

// JSON literals:
//   matrix  {"rows": n, "cols": m, "re": [...], "im": [...]}   (row-major)
//   ket     {"dim": n, "re": [...], "im": [...]}
//   channel {"dim_in": n, "dim_out": m, "kraus": [matrix, ...]}
// "im" may be omitted for real data.

namespace qsdp::json_io {

using Json = nlohmann::json;

namespace detail {

inline const Json& field(const Json& j, const char* key, const char* what) {
    if (!j.is_object() || !j.contains(key))
        throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
    return j.at(key);
}

inline Index count_field(const Json& j, const char* key, const char* what) {
    const Json& v = field(j, key, what);
    if (!v.is_number_integer() || v.get<long long>() < 1)
        throw ParseError(std::string(what) + ": \"" + key + "\" must be a positive integer");
    return static_cast<Index>(v.get<long long>());
}

inline std::vector<double> number_array(const Json& j, const char* key, std::size_t n, const char* what) {
    if (!j.contains(key)) {
        if (std::string(key) == "im") return std::vector<double>(n, 0.0);
        throw ParseError(std::string(what) + ": missing field \"" + key + "\"");
    }
    const Json& a = j.at(key);
    if (!a.is_array() || a.size() != n)
        throw ParseError(std::string(what) + ": \"" + key + "\" must be an array of " + std::to_string(n) +
                         " numbers");
    std::vector<double> out;
    out.reserve(n);
    for (const auto& x : a) {
        if (!x.is_number()) throw ParseError(std::string(what) + ": \"" + key + "\" holds a non-number");
        out.push_back(x.get<double>());
    }
    return out;
}

}  // namespace detail

inline Json to_json(const ComplexMatrix& m) {
    Json re = Json::array(), im = Json::array();
    for (Index i = 0; i < m.rows(); ++i)
        for (Index j = 0; j < m.cols(); ++j) {
            re.push_back(m(i, j).real());
            im.push_back(m(i, j).imag());
        }
    return Json{{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

inline ComplexMatrix matrix_from_json(const Json& j) {
    const Index r = detail::count_field(j, "rows", "matrix");
    const Index c = detail::count_field(j, "cols", "matrix");
    const auto n = static_cast<std::size_t>(r * c);
    const auto re = detail::number_array(j, "re", n, "matrix");
    const auto im = detail::number_array(j, "im", n, "matrix");
    ComplexMatrix m(r, c);
    for (Index i = 0; i < r; ++i)
        for (Index k = 0; k < c; ++k) {
            const auto idx = static_cast<std::size_t>(i * c + k);
            m(i, k) = Complex(re[idx], im[idx]);
        }
    return m;
}

inline Json to_json(const Ket& k) {
    Json re = Json::array(), im = Json::array();
    for (Index i = 0; i < k.dim(); ++i) {
        re.push_back(k.amplitudes()(i).real());
        im.push_back(k.amplitudes()(i).imag());
    }
    return Json{{"dim", k.dim()}, {"re", re}, {"im", im}};
}

inline Ket ket_from_json(const Json& j, const Tolerances& tol = default_tolerances) {
    const Index d = detail::count_field(j, "dim", "ket");
    const auto re = detail::number_array(j, "re", static_cast<std::size_t>(d), "ket");
    const auto im = detail::number_array(j, "im", static_cast<std::size_t>(d), "ket");
    ComplexVector v(d);
    for (Index i = 0; i < d; ++i) v(i) = Complex(re[static_cast<std::size_t>(i)], im[static_cast<std::size_t>(i)]);
    return Ket(v, tol);
}

inline Json to_json(const KrausChannel& ch) {
    Json ks = Json::array();
    for (const auto& k : ch.kraus()) ks.push_back(to_json(k));
    return Json{{"dim_in", ch.dim_in()}, {"dim_out", ch.dim_out()}, {"kraus", ks}};
}

struct LoadedChannel {
    KrausChannel channel;
    double completeness_residual;  // max |sum K^dagger K - I|
};

inline LoadedChannel channel_from_json(const Json& j, const Tolerances& tol = default_tolerances) {
    const Index din = detail::count_field(j, "dim_in", "channel");
    const Index dout = detail::count_field(j, "dim_out", "channel");
    const Json& ks = detail::field(j, "kraus", "channel");
    if (!ks.is_array() || ks.empty()) throw ParseError("channel: \"kraus\" must be a non-empty array of matrices");
    std::vector<ComplexMatrix> kraus;
    for (const auto& k : ks) kraus.push_back(matrix_from_json(k));
    for (const auto& k : kraus)
        if (k.rows() != dout || k.cols() != din)
            throw DimensionError("channel: Kraus operator shape does not match dim_out x dim_in");
    const double residual = max_abs(completeness_defect(kraus, din));
    return {KrausChannel(din, dout, std::move(kraus), tol), residual};
}

inline Json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw ParseError(path + ": " + e.what());
    }
}

}  // namespace qsdp::json_io
