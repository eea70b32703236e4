// Copyright 2026 The qwp Authors
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

#ifndef QWP_ERRORS_HPP
#define QWP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace qwp {

/// Failure categories raised by the simulation and I/O layers.
enum class ErrorKind {
    invalid_position,
    domain,
    missing_randomness,
    boundary_leakage,
    geometry_too_small,
    insufficient_data,
    configuration,
    parse,
    validation,
    file,
};

inline const char *to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::invalid_position:
            return "invalid-position";
        case ErrorKind::domain:
            return "domain";
        case ErrorKind::missing_randomness:
            return "missing-randomness";
        case ErrorKind::boundary_leakage:
            return "boundary-leakage";
        case ErrorKind::geometry_too_small:
            return "geometry-too-small";
        case ErrorKind::insufficient_data:
            return "insufficient-data";
        case ErrorKind::configuration:
            return "configuration";
        case ErrorKind::parse:
            return "parse";
        case ErrorKind::validation:
            return "validation";
        case ErrorKind::file:
            return "file";
    }
    return "unknown";
}

class Error : public std::runtime_error {
   public:
    Error(ErrorKind kind, const std::string &message) : std::runtime_error(message), kind_(kind) {
    }

    ErrorKind kind() const noexcept {
        return kind_;
    }

   private:
    ErrorKind kind_;
};

}  // namespace qwp

#endif  // QWP_ERRORS_HPP
