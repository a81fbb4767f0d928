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

#include <atomic>
#include <stdexcept>

namespace ccmix::simd {

bool cpu_has_avx2() noexcept; // kernels_avx2.cpp

namespace {

std::atomic<const KernelTable*>& active_table() {
    static std::atomic<const KernelTable*> table{&kernels(detect_isa())};
    return table;
}

} // namespace

std::string_view isa_name(Isa isa) noexcept {
    switch (isa) {
    case Isa::Scalar:
        return "scalar";
    case Isa::Avx2:
        return "avx2";
    }
    return "unknown";
}

Isa detect_isa() noexcept {
    return (avx2_kernels() != nullptr && cpu_has_avx2()) ? Isa::Avx2 : Isa::Scalar;
}

const KernelTable& kernels(Isa isa) {
    if (isa == Isa::Scalar)
        return scalar_kernels();
    if (avx2_kernels() == nullptr || !cpu_has_avx2())
        throw std::invalid_argument("AVX2 kernels unavailable on this CPU/build");
    return *avx2_kernels();
}

Isa active_isa() noexcept {
    return active_table().load() == &scalar_kernels() ? Isa::Scalar : Isa::Avx2;
}

void set_isa(Isa isa) { active_table().store(&kernels(isa)); }

namespace {

void require_same(std::size_t a, std::size_t b) {
    if (a != b)
        throw std::invalid_argument("simd kernel: span size mismatch");
}

} // namespace

void affine(double shift, double scale, std::span<const double> in, std::span<double> out) {
    require_same(in.size(), out.size());
    active_table().load()->affine(shift, scale, in.data(), out.data(), in.size());
}

void min_with(double cap, std::span<const double> in, std::span<double> out) {
    require_same(in.size(), out.size());
    active_table().load()->min_with(cap, in.data(), out.data(), in.size());
}

void clamp(double lo, double hi, std::span<const double> in, std::span<double> out) {
    require_same(in.size(), out.size());
    active_table().load()->clamp(lo, hi, in.data(), out.data(), in.size());
}

void neg_log1m(std::span<const double> in, std::span<double> out) {
    require_same(in.size(), out.size());
    active_table().load()->neg_log1m(in.data(), out.data(), in.size());
}

void increments(std::span<const double> e, std::span<const double> rate, std::span<double> out) {
    require_same(e.size(), out.size());
    require_same(rate.size(), e.size());
    active_table().load()->increments(e.data(), rate.data(), out.data(), e.size());
}

} // namespace ccmix::simd
