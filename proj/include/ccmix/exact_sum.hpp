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

#include <array>
#include <cstdint>

namespace ccmix {

/// Exact accumulator for sums of doubles.
///
/// Every finite double is a multiple of 2^-1074, so the running total is held
/// as a signed fixed-point integer spread over 32-bit limbs. Addition is
/// exact and associative: any grouping or ordering of the same terms yields
/// the same state, and so the same `value()`. This is what makes block
/// partials merge to exactly the sequential result.
class ExactSum {
  public:
    void add(double x);
    ExactSum& operator+=(double x) {
        add(x);
        return *this;
    }
    void merge(const ExactSum& other);

    /// Total rounded to nearest double (ties to even).
    double value() const;

    friend bool operator==(const ExactSum& a, const ExactSum& b);

  private:
    static constexpr int kLimbBits = 32;
    // 2098 bits of fixed-point range plus headroom for carries.
    static constexpr int kLimbs = 68;
    // Un-normalized limbs absorb < 2^33 per operation; renormalize long
    // before int64 can overflow.
    static constexpr std::uint32_t kMaxPending = 1u << 29;

    void normalize();
    void note_pending();

    std::array<std::int64_t, kLimbs> limbs_{};
    std::uint32_t pending_ = 0;
};

} // namespace ccmix
