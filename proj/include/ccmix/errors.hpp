// Copyright 2026 The ccmix Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace ccmix {

/// Invalid user-supplied parameters. `field()` is a dotted path such as
/// "copula.rho", or empty when the problem is not tied to one field.
class ConfigError : public std::invalid_argument {
  public:
    ConfigError(std::string field, const std::string& what)
        : std::invalid_argument(field.empty() ? what : field + ": " + what),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

  private:
    std::string field_;
};

/// A root solve or other numerical step failed to produce a valid result.
class NumericalError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// An operation was called on data that does not satisfy its contract,
/// e.g. counterparty legs on a timeline without a counterparty time.
class ContractError : public std::logic_error {
  public:
    using std::logic_error::logic_error;
};

/// Partial results from different plans were combined.
class MergeError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Requested model lies outside what an operation supports.
class UnsupportedModel : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace ccmix
