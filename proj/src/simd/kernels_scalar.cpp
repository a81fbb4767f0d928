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

#include "ccmix/simd/kernels.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>

#include "log_constants.hpp"

namespace ccmix::simd {

using namespace detail;

double log_ref(double x) noexcept {
    const auto bits = std::bit_cast<std::uint64_t>(x);
    std::int64_t hx = static_cast<std::int64_t>(bits >> 32);
    std::int64_t k = (hx >> 20) - 1023;
    hx &= 0x000fffff;
    const std::int64_t i = (hx + kSqrt2Carry) & 0x100000;
    const auto high = static_cast<std::uint64_t>(hx | (i ^ 0x3ff00000));
    const double m = std::bit_cast<double>((high << 32) | (bits & 0xffffffffULL));
    k += i >> 20;

    const double f = m - 1.0;
    const double dk = static_cast<double>(k);
    const double s = f / (2.0 + f);
    const double z = s * s;
    const double w = z * z;
    const double t1 = w * (kLg2 + w * (kLg4 + w * kLg6));
    const double t2 = z * (kLg1 + w * (kLg3 + w * (kLg5 + w * kLg7)));
    const double r = t2 + t1;

    if (((hx - kPolyLo) | (kPolyHi - hx)) > 0) {
        const double hfsq = 0.5 * f * f;
        return dk * kLn2Hi - ((hfsq - (s * (hfsq + r) + dk * kLn2Lo)) - f);
    }
    return dk * kLn2Hi - ((s * (f - r) - dk * kLn2Lo) - f);
}

namespace {

void affine_scalar(double shift, double scale, const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = shift + scale * in[i];
}

void min_with_scalar(double cap, const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = in[i] < cap ? in[i] : cap;
}

void clamp_scalar(double lo, double hi, const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) {
        const double v = in[i] > lo ? in[i] : lo;
        out[i] = v < hi ? v : hi;
    }
}

void neg_log1m_scalar(const double* in, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = -log_ref(1.0 - in[i]);
}

void increments_scalar(const double* e, const double* rate, double* out, std::size_t n) {
    // Walk backwards so that out == e (in place) reads e[i-1] before it is
    // overwritten.
    for (std::size_t i = n; i-- > 0;) {
        const double prev = i == 0 ? 0.0 : e[i - 1];
        out[i] = (e[i] - prev) / rate[i];
    }
}

} // namespace

const KernelTable& scalar_kernels() noexcept {
    static const KernelTable table{affine_scalar, min_with_scalar, clamp_scalar,
                                   neg_log1m_scalar, increments_scalar};
    return table;
}

} // namespace ccmix::simd
