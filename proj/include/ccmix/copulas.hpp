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
#include <random>
#include <span>
#include <variant>
#include <vector>

#include "ccmix/rng.hpp"

namespace ccmix {

/// Uniforms are clamped to [kUniformEpsilon, 1 - kUniformEpsilon] so that
/// thresholds -log(1-u) stay finite.
inline constexpr double kUniformEpsilon = 1e-15;

/// Independent names (pure contagion model).
struct ProductCopula {
    friend bool operator==(const ProductCopula&, const ProductCopula&) = default;
};

/// How the common-shock minimum S_i is mapped to a uniform.
enum class ShockMap {
    /// u = exp(-(c0+c1) S): a systematic shock produces jointly *late*
    /// thresholds. This orientation reproduces the reference tables.
    Survival,
    /// u = 1 - exp(-(c0+c1) S): a systematic shock produces jointly early
    /// thresholds.
    Distribution,
};

/// Marshall-Olkin exponential copula: S_i = min(T0, T_i) with T0 ~ Exp(c0)
/// shared by all names and T_i ~ Exp(c1) idiosyncratic. Names hit by the
/// common shock receive exactly equal uniforms (simultaneous defaults).
struct ExponentialCopula {
    double c0 = 0.01;
    double c1 = 0.1;
    ShockMap map = ShockMap::Survival;
    friend bool operator==(const ExponentialCopula&, const ExponentialCopula&) = default;
};

/// One-factor Gaussian: X_i = rho Z + sqrt(1 - rho^2) Z_i, U_i = Phi(X_i).
struct GaussianOneFactorCopula {
    double rho = 0.0;
    friend bool operator==(const GaussianOneFactorCopula&, const GaussianOneFactorCopula&) = default;
};

using CopulaSpec = std::variant<ProductCopula, ExponentialCopula, GaussianOneFactorCopula>;

/// Throws ConfigError (field prefixed with `path`) on invalid parameters.
void validate(const CopulaSpec& spec, const std::string& path = "copula");

/// Random stream handed to the samplers. One per worker block.
class RandomStream {
  public:
    explicit RandomStream(Xoshiro256pp engine) : engine_(engine) {}
    explicit RandomStream(std::uint64_t seed) : engine_(seed) {}

    double uniform() { return open_uniform(engine_); }
    double normal() { return normal_(engine_); }
    /// Exponential with the given rate (mean 1/rate).
    double exponential(double rate);

    Xoshiro256pp& engine() { return engine_; }

  private:
    Xoshiro256pp engine_;
    std::normal_distribution<double> normal_;
};

struct UniformVector {
    std::vector<double> u;
};

/// Ascending standard-exponential thresholds E*_1 <= ... <= E*_n.
struct SortedThresholds {
    std::vector<double> e_star;
};

/// Fills `out` with one joint draw from the copula (dimension out.size()),
/// each component clamped into [eps, 1-eps].
void sample_uniforms(const CopulaSpec& spec, RandomStream& rng, std::span<double> out);

UniformVector sample_uniforms(const CopulaSpec& spec, std::size_t n, RandomStream& rng);

/// E_i = -log(1 - u_i), sorted ascending into `out` (may alias `u`).
void to_sorted_thresholds(std::span<const double> u, std::span<double> out);

SortedThresholds to_sorted_thresholds(const UniformVector& u);

/// Standard normal distribution function.
double normal_cdf(double x);

} // namespace ccmix
