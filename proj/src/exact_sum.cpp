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

#include "ccmix/exact_sum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ccmix {

void ExactSum::add(double x) {
    if (x == 0.0)
        return;
    if (!std::isfinite(x))
        throw std::domain_error("ExactSum: non-finite term");

    int exp = 0;
    const double frac = std::frexp(std::fabs(x), &exp);
    auto mant = static_cast<std::uint64_t>(std::ldexp(frac, 53));
    int e = exp - 53;
    if (e < -1074) {
        // Subnormal: the dropped bits are zero.
        mant >>= (-1074 - e);
        e = -1074;
    }
    const int pos = e + 1074;
    const int limb = pos / kLimbBits;
    const int off = pos % kLimbBits;
    const unsigned __int128 wide = static_cast<unsigned __int128>(mant) << off;
    const std::int64_t sign = x < 0.0 ? -1 : 1;
    limbs_[limb] += sign * static_cast<std::int64_t>(wide & 0xffffffffu);
    limbs_[limb + 1] += sign * static_cast<std::int64_t>((wide >> 32) & 0xffffffffu);
    limbs_[limb + 2] += sign * static_cast<std::int64_t>(wide >> 64);
    note_pending();
}

void ExactSum::merge(const ExactSum& other) {
    ExactSum rhs = other;
    rhs.normalize();
    normalize();
    for (int i = 0; i < kLimbs; ++i)
        limbs_[i] += rhs.limbs_[i];
    note_pending();
}

void ExactSum::note_pending() {
    if (++pending_ >= kMaxPending)
        normalize();
}

void ExactSum::normalize() {
    for (int i = 0; i + 1 < kLimbs; ++i) {
        const std::int64_t carry = limbs_[i] >> kLimbBits; // floor division
        limbs_[i] -= carry * (std::int64_t{1} << kLimbBits);
        limbs_[i + 1] += carry;
    }
    pending_ = 0;
}

double ExactSum::value() const {
    ExactSum s = *this;
    s.normalize();
    bool negative = s.limbs_[kLimbs - 1] < 0;
    if (negative) {
        for (auto& l : s.limbs_)
            l = -l;
        s.normalize();
    }
    int top = kLimbs - 1;
    while (top >= 0 && s.limbs_[top] == 0)
        --top;
    if (top < 0)
        return 0.0;
    // Top four limbs as one integer; anything below only matters as a sticky
    // bit for round-to-nearest-even.
    const int base = std::max(0, top - 3);
    unsigned __int128 m = 0;
    for (int i = top; i >= base; --i)
        m = (m << kLimbBits) | static_cast<std::uint32_t>(s.limbs_[i]);
    bool sticky = false;
    for (int i = 0; i < base; ++i)
        sticky = sticky || s.limbs_[i] != 0;
    int width = 0;
    for (unsigned __int128 t = m; t != 0; t >>= 1)
        ++width;
    int shift = std::max(0, width - 53);
    // Results below the normal range keep the 2^-1074 quantum, i.e. all bits.
    auto mant = static_cast<std::uint64_t>(m >> shift);
    if (shift > 0) {
        const unsigned __int128 rem = m & ((static_cast<unsigned __int128>(1) << shift) - 1);
        const unsigned __int128 half = static_cast<unsigned __int128>(1) << (shift - 1);
        if (rem > half || (rem == half && (sticky || (mant & 1u))))
            ++mant;
    }
    const double v = std::ldexp(static_cast<double>(mant), shift + base * kLimbBits - 1074);
    return negative ? -v : v;
}

bool operator==(const ExactSum& a, const ExactSum& b) {
    ExactSum x = a;
    ExactSum y = b;
    x.normalize();
    y.normalize();
    return x.limbs_ == y.limbs_;
}

} // namespace ccmix
