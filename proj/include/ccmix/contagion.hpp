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
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccmix/copulas.hpp"

namespace ccmix {

/// Contagion decay rate d. Infinity is a flag rather than an IEEE inf so the
/// no-contagion limit is an explicit branch.
struct Decay {
    double rate = 0.0;
    bool infinite = false;

    static constexpr Decay none() { return {0.0, false}; }
    static constexpr Decay finite(double d) { return {d, false}; }
    static constexpr Decay infinity() { return {0.0, true}; }

    bool is_zero() const { return !infinite && rate == 0.0; }

    friend bool operator==(const Decay&, const Decay&) = default;
};

/// Homogeneous contagion intensity
///   lambda(t) = a (1 + sum_{j defaulted} c exp(-d (t - tau_j))).
struct IntensityParams {
    double a = 0.01; ///< base hazard, 1/years
    double c = 0.0;  ///< contagion multiplier per prior default
    Decay d;

    friend bool operator==(const IntensityParams&, const IntensityParams&) = default;
};

void validate(const IntensityParams& p, const std::string& path = "intensity");

/// Counterparty hazard a_B (1 + c_B N(t)), N(t) = portfolio defaults by t.
struct CounterpartyParams {
    double a_B = 0.001;
    double c_B = 0.0;

    friend bool operator==(const CounterpartyParams&, const CounterpartyParams&) = default;
};

void validate(const CounterpartyParams& p, const std::string& path = "counterparty");

struct DefaultTimeline {
    std::vector<double> tau; ///< ordered default times, years
    std::optional<double> counterparty_tau;
};

struct NewtonOptions {
    double tolerance = 1e-12;
    int max_iterations = 100;
};

/// Generates ordered default times from sorted thresholds for one parameter
/// set. Holds the per-plan constants (the d = 0 increment rates) so the hot
/// loop does no allocation.
///
/// Thresholds that tie produce simultaneous defaults. A name defaulting at t
/// contributes contagion only for s > t, so tied names do not excite each
/// other at the shared instant.
class DefaultTimeGenerator {
  public:
    DefaultTimeGenerator(const IntensityParams& params, std::size_t n_names,
                         NewtonOptions newton = {});

    /// Writes n ordered default times into `tau`. Once a default falls after
    /// `horizon`, the remaining entries are set to +infinity without being
    /// solved (pricing never looks past maturity).
    void generate(std::span<const double> e_star, std::span<double> tau,
                  double horizon = std::numeric_limits<double>::infinity()) const;

    const IntensityParams& params() const { return params_; }

  private:
    // tau^k = E_k / a: c = 0 or d = infinity (the same model).
    void generate_independent(std::span<const double> e_star, std::span<double> tau,
                              double horizon) const;
    void generate_recursive(std::span<const double> e_star, std::span<double> tau,
                            double horizon) const;
    void generate_decay(std::span<const double> e_star, std::span<double> tau,
                        double horizon) const;

    IntensityParams params_;
    NewtonOptions newton_;
    // a (1 + (k-1) c) for the d = 0 recursion.
    std::vector<double> rates_;
};

/// Solves a s + (a c / d) G (1 - exp(-d s)) = gap for s >= 0, i.e. the time
/// from the (k-1)th default to the kth, where G = sum_{i<k} exp(-d (tau^{k-1}
/// - tau^i)) and gap = E*_k - E*_{k-1}. Newton from s = 0, bracketed
/// bisection fallback. `order` (k) is only used in error messages.
double solve_decay_increment(double a, double c, double d, double weight, double gap,
                             double elapsed, const NewtonOptions& opts, std::size_t order);

/// Closed-form recursion, requires d = 0.
DefaultTimeline ordered_defaults_no_decay(const IntensityParams& p, const SortedThresholds& e);

/// Newton root-finding per default, requires 0 < d < infinity.
DefaultTimeline ordered_defaults_with_decay(const IntensityParams& p, const SortedThresholds& e,
                                            NewtonOptions opts = {});

/// Dispatches on d; d = infinity gives the no-contagion times.
DefaultTimeline ordered_defaults(const IntensityParams& p, const SortedThresholds& e);

/// Unique t with integral_0^t a_B (1 + c_B N(s)) ds = e_B. The hazard is
/// piecewise constant between portfolio defaults, so this inverts exactly.
double counterparty_default_time(const CounterpartyParams& cp, std::span<const double> tau,
                                 double e_B);

double counterparty_default_time(const CounterpartyParams& cp, const DefaultTimeline& timeline,
                                 double e_B);

} // namespace ccmix
