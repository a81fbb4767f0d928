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
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccmix/contagion.hpp"
#include "ccmix/exact_sum.hpp"

namespace ccmix {

/// Maturity, payment grid t_1 < ... < t_N = T (t_0 = 0 implied), recovery
/// and a flat continuously-compounded rate.
struct ContractTerms {
    double maturity = 3.0;
    std::vector<double> payment_dates;
    double recovery = 0.5;
    double rate = 0.05;

    /// N equally spaced payments over (0, T].
    static ContractTerms regular(double maturity, std::size_t payments, double recovery,
                                 double rate);

    double discount(double t) const;

    friend bool operator==(const ContractTerms&, const ContractTerms&) = default;
};

void validate(const ContractTerms& terms, const std::string& path = "contract");

/// Attachment points 0 = k_0 < k_1 < ... < k_M = 1. Tranches are numbered
/// 1..M; tranche l covers [k_{l-1}, k_l].
struct TrancheSpec {
    std::vector<double> attachments{0.0, 0.15, 0.3, 1.0};

    std::size_t count() const { return attachments.size() - 1; }
    double lower(std::size_t l) const { return attachments.at(l - 1); }
    double upper(std::size_t l) const { return attachments.at(l); }

    friend bool operator==(const TrancheSpec&, const TrancheSpec&) = default;
};

void validate(const TrancheSpec& tranches, const std::string& path = "tranches");

/// Present values on one path, per unit notional. `fee` is the fee leg at a
/// unit spread.
struct LegPair {
    double contingent = 0.0;
    double fee = 0.0;
};

/// Loss definition for the CDO legs.
struct LossOptions {
    /// When true L(t) = (1 - R) x defaulted fraction; otherwise (the default)
    /// L(t) is the defaulted fraction itself.
    bool loss_given_default_scaling = false;
};

/// Fraction of the n names with tau^k <= t (right-continuous in t).
double portfolio_loss(const DefaultTimeline& timeline, double t, std::size_t n);

/// clamp(L - lo, 0, hi - lo).
double tranche_loss(double loss, double lo, double hi);

/// kth-to-default swap legs, k in [1, n].
LegPair cds_legs_on_path(std::size_t k, const DefaultTimeline& timeline,
                         const ContractTerms& terms);

/// As above with every payment gated by counterparty survival. Throws
/// ContractError when the timeline carries no counterparty time.
LegPair cds_legs_with_counterparty(std::size_t k, const DefaultTimeline& timeline,
                                   const ContractTerms& terms);

/// Tranche l legs, losses settled at payment dates.
LegPair cdo_legs_on_path(std::size_t l, const DefaultTimeline& timeline,
                         const ContractTerms& terms, const TrancheSpec& tranches,
                         LossOptions opts = {});

LegPair cdo_legs_with_counterparty(std::size_t l, const DefaultTimeline& timeline,
                                   const ContractTerms& terms, const TrancheSpec& tranches,
                                   LossOptions opts = {});

/// Per-plan precomputation (discount factors, accruals) for pricing many
/// paths. `prepare()` caches the default counts at the payment dates for
/// one path; the leg methods then read from that cache.
class PathPricer {
  public:
    PathPricer(const ContractTerms& terms, const TrancheSpec& tranches, std::size_t n_names,
               LossOptions opts = {});

    void prepare(std::span<const double> tau);

    /// `counterparty_tau` empty means no counterparty gating.
    LegPair cds(std::size_t k, std::optional<double> counterparty_tau) const;
    LegPair cdo(std::size_t l, std::optional<double> counterparty_tau) const;

  private:
    double tranche_loss_at(std::size_t l, std::size_t date) const;

    std::vector<double> dates_;     // t_0 = 0, t_1, ..., t_N
    std::vector<double> accruals_;  // t_i - t_{i-1}, index i >= 1
    std::vector<double> discounts_; // B(t_i)
    double rate_;
    double lgd_;
    TrancheSpec tranches_;
    std::size_t n_;
    double loss_unit_;
    std::span<const double> tau_;
    std::vector<std::size_t> counts_; // defaults with tau <= t_i
};

struct MCEstimate {
    double value = 0.0;
    double std_error = 0.0;
    std::uint64_t paths = 0;
    std::uint64_t seed = 0;
};

/// Exact joint moments of (contingent, fee) over paths.
class LegMoments {
  public:
    void add(const LegPair& legs);
    void merge(const LegMoments& other);

    std::uint64_t paths() const { return paths_; }
    MCEstimate contingent(std::uint64_t seed) const;
    MCEstimate fee(std::uint64_t seed) const;
    /// Covariance between the two sample means.
    double mean_covariance() const;

    friend bool operator==(const LegMoments&, const LegMoments&) = default;

  private:
    ExactSum c_, f_, cc_, ff_, cf_;
    std::uint64_t paths_ = 0;
};

/// Ratio contingent/fee with a delta-method standard error. Throws
/// ContractError when fee.value <= 0.
MCEstimate swap_rate(const MCEstimate& contingent, const MCEstimate& fee,
                     double mean_covariance = 0.0);

MCEstimate swap_rate(const LegMoments& moments, std::uint64_t seed);

} // namespace ccmix
