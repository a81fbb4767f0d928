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

#include "ccmix/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include "ccmix/errors.hpp"

namespace ccmix::analytic {

namespace {

constexpr double kCollisionTolerance = 1e-9;
// Above this amplitude the alternating partial-fraction sum loses more than
// ~6 significant digits to cancellation.
constexpr double kMaxAmplitude = 1e10;

void check_order(std::size_t k, std::size_t n) {
    if (n == 0 || k < 1 || k > n)
        throw std::out_of_range("order k must lie in [1, n]");
}

} // namespace

double beta(std::size_t j, std::size_t n, double c) {
    if (j >= n)
        throw std::out_of_range("beta: index j must be < n");
    return static_cast<double>(n - j) * (1.0 + static_cast<double>(j) * c);
}

double HypoexpDensity::density(double t) const {
    if (t < 0.0)
        return 0.0;
    double f = 0.0;
    for (std::size_t j = 0; j < rates.size(); ++j)
        f += coeffs[j] * std::exp(-rates[j] * t);
    return f;
}

double HypoexpDensity::cdf(double t) const {
    if (t <= 0.0)
        return 0.0;
    double p = 0.0;
    for (std::size_t j = 0; j < rates.size(); ++j)
        p += coeffs[j] / rates[j] * -std::expm1(-rates[j] * t);
    return p;
}

std::optional<HypoexpDensity> partial_fractions(std::size_t k, std::size_t n, double a, double c) {
    check_order(k, n);
    std::vector<double> b(k);
    for (std::size_t j = 0; j < k; ++j)
        b[j] = beta(j, n, c);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t m = j + 1; m < k; ++m)
            if (std::fabs(b[m] - b[j]) < kCollisionTolerance * std::max(b[m], b[j]))
                return std::nullopt;

    HypoexpDensity law;
    law.rates.resize(k);
    law.coeffs.resize(k);
    for (std::size_t j = 0; j < k; ++j) {
        double alpha = b[j];
        for (std::size_t m = 0; m < k; ++m)
            if (m != j)
                alpha *= b[m] / (b[m] - b[j]);
        law.rates[j] = a * b[j];
        law.coeffs[j] = a * alpha;
    }
    return law;
}

OrderedDefaultLaw::OrderedDefaultLaw(std::size_t k, std::size_t n, const IntensityParams& p)
    : k_(k), route_(Route::MatrixExponential) {
    check_order(k, n);
    validate(p);
    if (!p.d.is_zero())
        throw UnsupportedModel("closed-form ordered default law requires d = 0");
    rates_.resize(k);
    for (std::size_t j = 0; j < k; ++j)
        rates_[j] = p.a * beta(j, n, p.c);

    fractions_ = partial_fractions(k, n, p.a, p.c);
    if (fractions_) {
        double amplitude = 0.0;
        for (std::size_t j = 0; j < k; ++j)
            amplitude += std::fabs(fractions_->coeffs[j] / fractions_->rates[j]);
        if (amplitude <= kMaxAmplitude)
            route_ = Route::PartialFractions;
    }
}

namespace {

// Row 0 of exp(Q t) for the pure-birth generator Q with Q(j,j) = -r_j,
// Q(j,j+1) = r_j: entry j is P(exactly j inter-default stages completed).
// Row 0 of exp(Q t) for the pure-birth chain 0 -> 1 -> ... -> k, where state
// k (absorbing) means the kth default has happened.
Eigen::RowVectorXd stage_probabilities(const std::vector<double>& rates, double t) {
    const auto k = static_cast<Eigen::Index>(rates.size());
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(k + 1, k + 1);
    for (Eigen::Index j = 0; j < k; ++j) {
        q(j, j) = -rates[j] * t;
        q(j, j + 1) = rates[j] * t;
    }
    const Eigen::MatrixXd e = q.exp();
    return e.row(0);
}

} // namespace

double OrderedDefaultLaw::density_matrix(double t) const {
    if (t < 0.0 || std::isinf(t))
        return 0.0;
    if (t == 0.0)
        return k_ == 1 ? rates_[0] : 0.0;
    const Eigen::RowVectorXd p = stage_probabilities(rates_, t);
    return std::max(0.0, p(static_cast<Eigen::Index>(k_) - 1) * rates_.back());
}

double OrderedDefaultLaw::cdf_matrix(double t) const {
    if (t <= 0.0)
        return 0.0;
    if (std::isinf(t))
        return 1.0;
    const Eigen::RowVectorXd p = stage_probabilities(rates_, t);
    const double absorbed = p(static_cast<Eigen::Index>(k_));
    if (absorbed <= 0.5)
        return std::clamp(absorbed, 0.0, 1.0);
    return std::clamp(1.0 - p.head(static_cast<Eigen::Index>(k_)).sum(), 0.0, 1.0);
}

namespace {

// Terms of a partial-fraction sum can be many orders larger than the sum
// itself (early and far tails). Past this ratio the rounding error of the
// sum is no longer negligible and the matrix route is used instead.
constexpr double kCancellationFloor = 1e-4;

} // namespace

double OrderedDefaultLaw::density(double t) const {
    if (route_ == Route::PartialFractions && t >= 0.0 && std::isfinite(t)) {
        double sum = 0.0;
        double mass = 0.0;
        for (std::size_t j = 0; j < k_; ++j) {
            const double term = fractions_->coeffs[j] * std::exp(-fractions_->rates[j] * t);
            sum += term;
            mass += std::fabs(term);
        }
        if (sum > kCancellationFloor * mass)
            return sum;
    }
    return density_matrix(t);
}

double OrderedDefaultLaw::cdf(double t) const {
    if (route_ == Route::PartialFractions && t > 0.0 && std::isfinite(t)) {
        // F directly while small, otherwise through the survival function,
        // so the smaller quantity is the one summed.
        double F = 0.0, F_mass = 0.0, S = 0.0, S_mass = 0.0;
        for (std::size_t j = 0; j < k_; ++j) {
            const double w = fractions_->coeffs[j] / fractions_->rates[j];
            const double x = fractions_->rates[j] * t;
            const double f = w * -std::expm1(-x);
            const double s = w * std::exp(-x);
            F += f;
            F_mass += std::fabs(f);
            S += s;
            S_mass += std::fabs(s);
        }
        if (F <= 0.5 && F > kCancellationFloor * F_mass)
            return F;
        if (F > 0.5 && S > kCancellationFloor * S_mass)
            return 1.0 - S;
    }
    return cdf_matrix(t);
}

double density_tau_k(std::size_t k, double t, std::size_t n, const IntensityParams& p) {
    return OrderedDefaultLaw(k, n, p).density(t);
}

double cdf_tau_k(std::size_t k, double t, std::size_t n, const IntensityParams& p) {
    return OrderedDefaultLaw(k, n, p).cdf(t);
}

} // namespace ccmix::analytic
