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

#include <stdexcept>
#include <string>

namespace qsdp {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Operand shapes or subsystem dimensions do not fit together.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// A parameter lies outside the interval where the operation is defined.
class DomainError : public Error {
public:
    using Error::Error;
};

/// A value failed an invariant check (Hermiticity, PSD, trace, CPTP, ...).
class ValidationError : public Error {
public:
    using Error::Error;
};

/// An instance exceeds the sizes this library is willing to solve densely.
class ResourceError : public Error {
public:
    using Error::Error;
};

/// The SDP solver did not reach an optimal status.
class SolverError : public Error {
public:
    using Error::Error;
};

/// Malformed text input; carries a 1-based line number when known.
class ParseError : public Error {
public:
    ParseError(const std::string& what, long line = 0)
        : Error(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    long line() const noexcept { return line_; }

private:
    long line_;
};

/// File could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace qsdp
