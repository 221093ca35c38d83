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

namespace qsdp {

/// Numerical tolerances used by validating constructors. Every constructor
/// that checks an invariant accepts an override of this record.
struct Tolerances {
    double unit = 1e-10;   // ket normalization
    double herm = 1e-10;   // A == A^dagger
    double psd = 1e-8;     // smallest eigenvalue >= -psd
    double trace = 1e-10;  // unit trace, probability sums
    double povm = 1e-8;    // sum of effects == I
    double rank = 1e-8;    // singular/eigen value cutoff for numerical rank
    double cptp = 1e-8;    // sum K^dagger K == I, Tr_b J == I_a
};

inline constexpr Tolerances default_tolerances{};

}  // namespace qsdp
