// SPDX-License-Identifier: Apache-2.0
//
// xtalk: coupled-interconnect crosstalk analysis toolkit
// Copyright (C) 2026 The xtalk authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace xtalk {

// Exit codes of the command-line tool are taken from the category.
enum class ErrorCategory {
    config = 1,     // bad input: config documents, geometry, topology
    numerical = 2,  // singular systems, divergence
    io = 3,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }
    int exit_code() const noexcept { return static_cast<int>(category_); }

private:
    ErrorCategory category_;
};

// A formula was evaluated outside its domain (non-positive dimension etc).
class DomainError : public Error {
public:
    explicit DomainError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

// An assembled parameter bundle or network violates an invariant.
class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

// A shield tap does not coincide with a ladder node.
class PlacementError : public Error {
public:
    PlacementError(const std::string& what, int suggested_segments)
        : Error(ErrorCategory::config, what), suggested_segments_(suggested_segments) {}

    int suggested_segments() const noexcept { return suggested_segments_; }

private:
    int suggested_segments_;
};

// The inductance matrix is not symmetric positive definite.
class CouplingError : public Error {
public:
    explicit CouplingError(const std::string& what) : Error(ErrorCategory::config, what) {}
};

class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& what, std::optional<int> line = std::nullopt)
        : Error(ErrorCategory::config, line ? "line " + std::to_string(*line) + ": " + what : what),
          line_(line) {}

    std::optional<int> line() const noexcept { return line_; }

private:
    std::optional<int> line_;
};

class AssemblyError : public Error {
public:
    explicit AssemblyError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class SolverError : public Error {
public:
    explicit SolverError(const std::string& what) : Error(ErrorCategory::numerical, what) {}
};

class DivergenceError : public Error {
public:
    DivergenceError(const std::string& what, double time)
        : Error(ErrorCategory::numerical, what), time_(time) {}

    double time() const noexcept { return time_; }

private:
    double time_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::io, what) {}
};

}  // namespace xtalk
