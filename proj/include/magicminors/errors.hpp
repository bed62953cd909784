/*
 * Copyright 2026 The magic-minors authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef MAGICMINORS_ERRORS_HPP
#define MAGICMINORS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace magicminors {

// Exit codes shared between the library's error taxonomy and the CLI:
//   0 success, 1 failing identity, 2 configuration/usage error,
//   3 enumeration capacity exceeded, 4 purity/model violation.
enum ExitCode : int {
    exit_ok = 0,
    exit_identity_failure = 1,
    exit_config_error = 2,
    exit_capacity_error = 3,
    exit_model_error = 4,
};

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
    virtual int exit_code() const { return exit_config_error; }
};

// Invalid sizes, mismatched dimensions, out-of-range indices, bad flags.
struct ConfigError : Error {
    using Error::Error;
    int exit_code() const override { return exit_config_error; }
};

struct DimensionError : ConfigError { using ConfigError::ConfigError; };
struct RangeError : ConfigError { using ConfigError::ConfigError; };
struct DomainError : ConfigError { using ConfigError::ConfigError; };
// Degenerate least-squares design (e.g. constant L grid).
struct FitError : ConfigError { using ConfigError::ConfigError; };

// Enumeration would exceed the configured term budget.
struct CapacityError : Error {
    using Error::Error;
    int exit_code() const override { return exit_capacity_error; }
};

// A model matrix failed a structural check (purity, normalization sum).
struct ModelError : Error {
    using Error::Error;
    int exit_code() const override { return exit_model_error; }
};

} // namespace magicminors

#endif
