// Copyright 2026 The embell Authors
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

namespace embell {

/// Bad input to a public operation (precondition violation).
class InvalidArgument : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A rate profile that takes negative values somewhere on its horizon.
class InvalidProfile : public InvalidArgument {
   public:
    using InvalidArgument::InvalidArgument;
};

/// Base class for failures of a numerical routine on otherwise valid input.
class NumericalError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// A matrix that must be invertible (e.g. Sigma + I/2) is singular or indefinite.
class NumericalDegeneracy : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// Integration produced non-finite values. Carries the time of failure.
class DivergenceError : public NumericalError {
   public:
    DivergenceError(double time, const std::string &what) : NumericalError(what), time_(time) {}
    double time() const noexcept { return time_; }

   private:
    double time_;
};

class RootNotFound : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// Truncated Fock representation loses more norm than allowed.
class CutoffTooSmall : public NumericalError {
   public:
    using NumericalError::NumericalError;
};

/// Configuration file problem. `key_path()` names the offending key (dotted path).
class ConfigError : public std::runtime_error {
   public:
    ConfigError(std::string key_path, const std::string &what)
        : std::runtime_error(what), key_path_(std::move(key_path)) {}
    const std::string &key_path() const noexcept { return key_path_; }

   private:
    std::string key_path_;
};

}  // namespace embell
