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

#include "ccmix/copulas.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccmix/errors.hpp"
#include "ccmix/simd/kernels.hpp"

namespace ccmix {

void validate(const CopulaSpec& spec, const std::string& path) {
    if (const auto* e = std::get_if<ExponentialCopula>(&spec)) {
        if (!(e->c0 > 0.0) || !std::isfinite(e->c0))
            throw ConfigError(path + ".c0", "must be a positive finite rate");
        if (!(e->c1 > 0.0) || !std::isfinite(e->c1))
            throw ConfigError(path + ".c1", "must be a positive finite rate");
    } else if (const auto* g = std::get_if<GaussianOneFactorCopula>(&spec)) {
        if (!(std::fabs(g->rho) <= 1.0))
            throw ConfigError(path + ".rho", "must satisfy |rho| <= 1");
    }
}

double RandomStream::exponential(double rate) { return -std::log(uniform()) / rate; }

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

namespace {

struct Sampler {
    RandomStream& rng;
    std::span<double> out;

    void operator()(const ProductCopula&) const {
        for (auto& v : out)
            v = rng.uniform();
    }

    void operator()(const ExponentialCopula& spec) const {
        const double common = rng.exponential(spec.c0);
        for (auto& v : out)
            v = rng.exponential(spec.c1);
        simd::min_with(common, out, out);
        const double total = spec.c0 + spec.c1;
        if (spec.map == ShockMap::Survival) {
            for (auto& v : out)
                v = std::exp(-total * v);
        } else {
            for (auto& v : out)
                v = -std::expm1(-total * v);
        }
    }

    void operator()(const GaussianOneFactorCopula& spec) const {
        const double z = rng.normal();
        for (auto& v : out)
            v = rng.normal();
        const double idio = std::sqrt((1.0 - spec.rho) * (1.0 + spec.rho));
        simd::affine(spec.rho * z, idio, out, out);
        for (auto& v : out)
            v = normal_cdf(v);
    }
};

} // namespace

void sample_uniforms(const CopulaSpec& spec, RandomStream& rng, std::span<double> out) {
    std::visit(Sampler{rng, out}, spec);
    simd::clamp(kUniformEpsilon, 1.0 - kUniformEpsilon, out, out);
}

UniformVector sample_uniforms(const CopulaSpec& spec, std::size_t n, RandomStream& rng) {
    validate(spec);
    if (n == 0)
        throw ConfigError("n_names", "must be at least 1");
    UniformVector result{std::vector<double>(n)};
    sample_uniforms(spec, rng, result.u);
    return result;
}

void to_sorted_thresholds(std::span<const double> u, std::span<double> out) {
    for (double v : u) {
        if (!(v > 0.0 && v < 1.0))
            throw NumericalError("uniform outside (0,1) reached threshold transform");
    }
    simd::neg_log1m(u, out);
    std::sort(out.begin(), out.end());
}

SortedThresholds to_sorted_thresholds(const UniformVector& u) {
    SortedThresholds result{std::vector<double>(u.u.size())};
    to_sorted_thresholds(u.u, result.e_star);
    return result;
}

} // namespace ccmix
