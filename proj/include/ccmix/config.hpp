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

#include <optional>
#include <string>
#include <string_view>

#include "ccmix/driver.hpp"

namespace ccmix {

struct OutputOptions {
    std::string csv;   ///< empty: standard output
    int precision = 4; ///< decimals in numeric CSV cells

    friend bool operator==(const OutputOptions&, const OutputOptions&) = default;
};

/// Everything a `price` run needs. Serialized as JSON; see docs/config.md.
struct RunConfig {
    SimulationPlan plan;
    OutputOptions output;
};

bool operator==(const RunConfig& a, const RunConfig& b);

/// Parses and validates a JSON run configuration. Unknown keys are rejected.
/// Throws ConfigError: syntax errors carry the line number in the message,
/// semantic errors carry the dotted field path in `field()`.
RunConfig parse_config(std::string_view text);

/// Canonical JSON text; parse_config(serialize_config(c)) == c.
std::string serialize_config(const RunConfig& config);

} // namespace ccmix
