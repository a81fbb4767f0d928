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

#include "ccmix/contagion.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ccmix/errors.hpp"
#include "ccmix/simd/kernels.hpp"

namespace ccmix {

void validate(const IntensityParams& p, const std::string& path) {
    if (!(p.a > 0.0) || !std::isfinite(p.a))
        throw ConfigError(path + ".a", "base hazard must be positive and finite");
    if (!(p.c >= 0.0) || !std::isfinite(p.c))
        throw ConfigError(path + ".c", "contagion multiplier must be >= 0");
    if (!p.d.infinite && (!(p.d.rate >= 0.0) || !std::isfinite(p.d.rate)))
        throw ConfigError(path + ".d", "decay must be >= 0 (or \"inf\")");
}

void validate(const CounterpartyParams& p, const std::string& path) {
    if (!(p.a_B > 0.0) || !std::isfinite(p.a_B))
        throw ConfigError(path + ".a_B", "must be positive and finite");
    if (!(p.c_B >= 0.0) || !std::isfinite(p.c_B))
        throw ConfigError(path + ".c_B", "must be >= 0");
}

DefaultTimeGenerator::DefaultTimeGenerator(const IntensityParams& params, std::size_t n_names,
                                           NewtonOptions newton)
    : params_(params), newton_(newton), rates_(n_names) {
    validate(params_);
    for (std::size_t k = 0; k < n_names; ++k)
        rates_[k] = params_.a * (1.0 + static_cast<double>(k) * params_.c);
}

void DefaultTimeGenerator::generate(std::span<const double> e_star, std::span<double> tau,
                                    double horizon) const {
    if (e_star.size() != rates_.size() || tau.size() != rates_.size())
        throw ContractError("DefaultTimeGenerator: size mismatch");
    if (params_.d.infinite || params_.c == 0.0)
        generate_independent(e_star, tau, horizon);
    else if (params_.d.rate == 0.0)
        generate_recursive(e_star, tau, horizon);
    else
        generate_decay(e_star, tau, horizon);
}

void DefaultTimeGenerator::generate_independent(std::span<const double> e_star,
                                                std::span<double> tau, double horizon) const {
    const double a = params_.a;
    std::size_t k = 0;
    for (; k < tau.size(); ++k) {
        tau[k] = e_star[k] / a;
        if (tau[k] > horizon) {
            ++k;
            break;
        }
    }
    std::fill(tau.begin() + static_cast<std::ptrdiff_t>(k), tau.end(),
              std::numeric_limits<double>::infinity());
}

void DefaultTimeGenerator::generate_recursive(std::span<const double> e_star,
                                              std::span<double> tau, double horizon) const {
    simd::increments(e_star, rates_, tau);
    double t = 0.0;
    std::size_t k = 0;
    for (; k < tau.size() && t <= horizon; ++k) {
        t += tau[k];
        tau[k] = t;
    }
    std::fill(tau.begin() + static_cast<std::ptrdiff_t>(k), tau.end(),
              std::numeric_limits<double>::infinity());
}

void DefaultTimeGenerator::generate_decay(std::span<const double> e_star,
                                          std::span<double> tau, double horizon) const {
    const double a = params_.a;
    const double c = params_.c;
    const double d = params_.d.rate;
    double t = e_star[0] / a;
    tau[0] = t;
    double weight = 1.0; // sum_{i<k} exp(-d (tau^{k-1} - tau^i))
    for (std::size_t k = 1; k < e_star.size(); ++k) {
        if (t > horizon) {
            std::fill(tau.begin() + static_cast<std::ptrdiff_t>(k), tau.end(),
                      std::numeric_limits<double>::infinity());
            return;
        }
        const double s = solve_decay_increment(a, c, d, weight, e_star[k] - e_star[k - 1], t,
                                               newton_, k + 1);
        t += s;
        tau[k] = t;
        weight = weight * std::exp(-d * s) + 1.0;
    }
}

double solve_decay_increment(double a, double c, double d, double weight, double gap,
                             double elapsed, const NewtonOptions& opts, std::size_t order) {
    if (gap <= 0.0)
        return 0.0;
    const double h = a * c / d * weight;
    auto residual = [&](double s) { return a * s - h * std::expm1(-d * s) - gap; };
    const double f_tol = opts.tolerance * std::max(1.0, gap);

    // F is increasing and concave, so Newton from the left stays left of the
    // root and increases monotonically.
    double s = 0.0;
    for (int it = 0; it < opts.max_iterations; ++it) {
        const double em1 = std::expm1(-d * s);
        const double f = a * s - h * em1 - gap;
        const double slope = a + a * c * weight * (1.0 + em1);
        const double step = f / slope;
        s -= step;
        if (!std::isfinite(s))
            break;
        if (std::fabs(f) < f_tol || std::fabs(step) < opts.tolerance * std::max(1.0, elapsed + s))
            return s;
    }

    // F(0) = -gap < 0 and F(gap/a + 1) >= a > 0.
    double lo = 0.0;
    double hi = gap / a + 1.0;
    if (!(residual(hi) > 0.0)) {
        std::ostringstream msg;
        msg << "default time solve failed to bracket root: k=" << order << " a=" << a
            << " c=" << c << " d=" << d;
        throw NumericalError(msg.str());
    }
    for (int it = 0; it < 400; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi)
            break;
        (residual(mid) < 0.0 ? lo : hi) = mid;
        if (hi - lo <= opts.tolerance * std::max(1.0, elapsed + lo))
            break;
    }
    const double root = 0.5 * (lo + hi);
    if (!std::isfinite(root)) {
        std::ostringstream msg;
        msg << "default time bisection failed: k=" << order << " a=" << a << " c=" << c
            << " d=" << d;
        throw NumericalError(msg.str());
    }
    return root;
}

namespace {

DefaultTimeline run_generator(const DefaultTimeGenerator& gen, const SortedThresholds& e) {
    DefaultTimeline timeline{std::vector<double>(e.e_star.size()), std::nullopt};
    if (!e.e_star.empty())
        gen.generate(e.e_star, timeline.tau);
    return timeline;
}

} // namespace

DefaultTimeline ordered_defaults_no_decay(const IntensityParams& p, const SortedThresholds& e) {
    if (!p.d.is_zero())
        throw UnsupportedModel("ordered_defaults_no_decay requires d = 0");
    return run_generator(DefaultTimeGenerator(p, e.e_star.size()), e);
}

DefaultTimeline ordered_defaults_with_decay(const IntensityParams& p, const SortedThresholds& e,
                                            NewtonOptions opts) {
    if (p.d.infinite || !(p.d.rate > 0.0))
        throw UnsupportedModel("ordered_defaults_with_decay requires 0 < d < infinity");
    return run_generator(DefaultTimeGenerator(p, e.e_star.size(), opts), e);
}

DefaultTimeline ordered_defaults(const IntensityParams& p, const SortedThresholds& e) {
    return run_generator(DefaultTimeGenerator(p, e.e_star.size()), e);
}

double counterparty_default_time(const CounterpartyParams& cp, std::span<const double> tau,
                                 double e_B) {
    double accrued = 0.0;
    double start = 0.0;
    for (std::size_t j = 0;; ++j) {
        const double slope = cp.a_B * (1.0 + cp.c_B * static_cast<double>(j));
        if (j == tau.size())
            return start + (e_B - accrued) / slope;
        const double segment = slope * (tau[j] - start);
        if (accrued + segment >= e_B)
            return start + (e_B - accrued) / slope;
        accrued += segment;
        start = tau[j];
    }
}

double counterparty_default_time(const CounterpartyParams& cp, const DefaultTimeline& timeline,
                                 double e_B) {
    return counterparty_default_time(cp, timeline.tau, e_B);
}

} // namespace ccmix
