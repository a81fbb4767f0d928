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
#include <optional>
#include <vector>

#include "ccmix/contagion.hpp"

// Closed-form laws of the ordered default times in the d = 0 pure-contagion
// model (product copula). Inter-default times are then independent
// exponentials with rates a beta_j, so tau^k is hypoexponential.

namespace ccmix::analytic {

/// beta_j = (n - j)(1 + j c), 0 <= j < n. Throws std::out_of_range otherwise.
double beta(std::size_t j, std::size_t n, double c);

/// f(t) = sum_j coeffs[j] exp(-rates[j] t).
struct HypoexpDensity {
    std::vector<double> rates;
    std::vector<double> coeffs;

    double density(double t) const;
    double cdf(double t) const;
};

/// Partial-fraction form with rates a beta_j and coefficients a alpha_{k,j},
/// alpha_{k,j} = beta_j prod_{m != j} beta_m / (beta_m - beta_j). Empty when
/// two rates are within 1e-9 relative of each other.
std::optional<HypoexpDensity> partial_fractions(std::size_t k, std::size_t n, double a, double c);

enum class Route { PartialFractions, MatrixExponential };

/// Law of tau^k. Uses partial fractions when the rates are distinct and the
/// expansion is well conditioned, else the exponential of the bidiagonal
/// phase-type generator (valid for any rates, including coincident ones).
class OrderedDefaultLaw {
  public:
    /// Throws std::out_of_range for k outside [1, n], UnsupportedModel for
    /// d != 0, ConfigError for invalid a or c.
    OrderedDefaultLaw(std::size_t k, std::size_t n, const IntensityParams& p);

    double density(double t) const;
    double cdf(double t) const;
    Route route() const { return route_; }

    /// Matrix-exponential evaluation regardless of route (cross-checks).
    double density_matrix(double t) const;
    double cdf_matrix(double t) const;

  private:
    std::size_t k_;
    std::vector<double> rates_;
    Route route_;
    std::optional<HypoexpDensity> fractions_;
};

double density_tau_k(std::size_t k, double t, std::size_t n, const IntensityParams& p);
double cdf_tau_k(std::size_t k, double t, std::size_t n, const IntensityParams& p);

} // namespace ccmix::analytic
