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

#include <cstddef>
#include <span>
#include <string_view>

// Data-parallel inner loops of the path pipeline.
//
// Each kernel has a scalar reference and, where the CPU supports it, an AVX2
// variant. Variants perform the same IEEE operations in the same order (no
// fused multiply-add, no reassociation), so their outputs are bit-identical;
// the choice of ISA never changes a reported number.

namespace ccmix::simd {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa) noexcept;

/// Best ISA the running CPU supports.
Isa detect_isa() noexcept;

/// ISA currently used by the dispatching entry points below.
Isa active_isa() noexcept;

/// Override the dispatch (tests, benchmarking). Throws std::invalid_argument
/// if the CPU lacks the requested ISA.
void set_isa(Isa isa);

struct KernelTable {
    // out[i] = shift + scale * in[i]
    void (*affine)(double shift, double scale, const double* in, double* out, std::size_t n);
    // out[i] = min(cap, in[i])
    void (*min_with)(double cap, const double* in, double* out, std::size_t n);
    // out[i] = min(max(in[i], lo), hi)
    void (*clamp)(double lo, double hi, const double* in, double* out, std::size_t n);
    // out[i] = -log(1 - in[i]), in[i] in (0,1)
    void (*neg_log1m)(const double* in, double* out, std::size_t n);
    // out[i] = (e[i] - e[i-1]) / rate[i], with e[-1] = 0
    void (*increments)(const double* e, const double* rate, double* out, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
/// Null when AVX2 support was not compiled in.
const KernelTable* avx2_kernels() noexcept;
const KernelTable& kernels(Isa isa);

/// Natural log of a positive normal double, evaluated with the shared
/// polynomial that both kernel variants use (within 1 ulp of std::log).
double log_ref(double x) noexcept;

// Dispatching conveniences. Input and output spans must have equal size;
// in-place operation (same span) is allowed.
void affine(double shift, double scale, std::span<const double> in, std::span<double> out);
void min_with(double cap, std::span<const double> in, std::span<double> out);
void clamp(double lo, double hi, std::span<const double> in, std::span<double> out);
void neg_log1m(std::span<const double> in, std::span<double> out);
void increments(std::span<const double> e, std::span<const double> rate, std::span<double> out);

} // namespace ccmix::simd
