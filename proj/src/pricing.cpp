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

#include "ccmix/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccmix/errors.hpp"

namespace ccmix {

ContractTerms ContractTerms::regular(double maturity, std::size_t payments, double recovery,
                                     double rate) {
    if (payments == 0)
        throw ConfigError("contract.payments", "must be at least 1");
    ContractTerms terms;
    terms.maturity = maturity;
    terms.recovery = recovery;
    terms.rate = rate;
    terms.payment_dates.resize(payments);
    for (std::size_t i = 0; i < payments; ++i)
        terms.payment_dates[i] = maturity * static_cast<double>(i + 1) / static_cast<double>(payments);
    terms.payment_dates.back() = maturity;
    return terms;
}

double ContractTerms::discount(double t) const { return std::exp(-rate * t); }

void validate(const ContractTerms& terms, const std::string& path) {
    if (!(terms.maturity > 0.0) || !std::isfinite(terms.maturity))
        throw ConfigError(path + ".maturity", "must be positive and finite");
    if (terms.payment_dates.empty())
        throw ConfigError(path + ".payment_dates", "at least one payment date required");
    double prev = 0.0;
    for (double t : terms.payment_dates) {
        if (!(t > prev))
            throw ConfigError(path + ".payment_dates", "dates must be strictly increasing and > 0");
        prev = t;
    }
    if (terms.payment_dates.back() != terms.maturity)
        throw ConfigError(path + ".payment_dates", "last payment date must equal maturity");
    if (!(terms.recovery >= 0.0 && terms.recovery <= 1.0))
        throw ConfigError(path + ".recovery", "must lie in [0, 1]");
    if (!std::isfinite(terms.rate) || terms.rate < 0.0)
        throw ConfigError(path + ".rate", "must be finite and >= 0");
}

void validate(const TrancheSpec& tranches, const std::string& path) {
    const auto& k = tranches.attachments;
    if (k.size() < 2)
        throw ConfigError(path, "need at least two attachment points");
    if (k.front() != 0.0 || k.back() != 1.0)
        throw ConfigError(path, "attachment points must start at 0 and end at 1");
    for (std::size_t i = 1; i < k.size(); ++i)
        if (!(k[i] > k[i - 1]))
            throw ConfigError(path, "attachment points must be strictly increasing");
}

double portfolio_loss(const DefaultTimeline& timeline, double t, std::size_t n) {
    const auto hit = std::upper_bound(timeline.tau.begin(), timeline.tau.end(), t);
    return static_cast<double>(hit - timeline.tau.begin()) / static_cast<double>(n);
}

double tranche_loss(double loss, double lo, double hi) {
    return std::clamp(loss - lo, 0.0, hi - lo);
}

PathPricer::PathPricer(const ContractTerms& terms, const TrancheSpec& tranches,
                       std::size_t n_names, LossOptions opts)
    : rate_(terms.rate), lgd_(1.0 - terms.recovery), tranches_(tranches), n_(n_names),
      loss_unit_(opts.loss_given_default_scaling ? 1.0 - terms.recovery : 1.0) {
    validate(terms);
    validate(tranches_);
    dates_.push_back(0.0);
    dates_.insert(dates_.end(), terms.payment_dates.begin(), terms.payment_dates.end());
    accruals_.assign(dates_.size(), 0.0);
    discounts_.assign(dates_.size(), 1.0);
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        accruals_[i] = dates_[i] - dates_[i - 1];
        discounts_[i] = terms.discount(dates_[i]);
    }
    counts_.assign(dates_.size(), 0);
}

void PathPricer::prepare(std::span<const double> tau) {
    tau_ = tau;
    for (std::size_t i = 0; i < dates_.size(); ++i)
        counts_[i] = static_cast<std::size_t>(
            std::upper_bound(tau.begin(), tau.end(), dates_[i]) - tau.begin());
}

LegPair PathPricer::cds(std::size_t k, std::optional<double> counterparty_tau) const {
    if (k < 1 || k > tau_.size())
        throw ContractError("cds: order k outside [1, n]");
    const double tau = tau_[k - 1];
    const double cp = counterparty_tau.value_or(std::numeric_limits<double>::infinity());
    LegPair legs;
    if (tau <= dates_.back() && cp >= tau)
        legs.contingent = lgd_ * std::exp(-rate_ * tau);
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        if (tau > dates_[i]) {
            if (cp > dates_[i])
                legs.fee += accruals_[i] * discounts_[i];
        } else {
            // t_{i-1} < tau <= t_i: accrued premium up to the default.
            if (tau > dates_[i - 1] && cp > tau)
                legs.fee += (tau - dates_[i - 1]) * std::exp(-rate_ * tau);
            break;
        }
    }
    return legs;
}

double PathPricer::tranche_loss_at(std::size_t l, std::size_t date) const {
    const double loss =
        static_cast<double>(counts_[date]) / static_cast<double>(n_) * loss_unit_;
    return tranche_loss(loss, tranches_.lower(l), tranches_.upper(l));
}

LegPair PathPricer::cdo(std::size_t l, std::optional<double> counterparty_tau) const {
    if (l < 1 || l > tranches_.count())
        throw ContractError("cdo: tranche index outside [1, M]");
    const double cp = counterparty_tau.value_or(std::numeric_limits<double>::infinity());
    const double width = tranches_.upper(l) - tranches_.lower(l);
    LegPair legs;
    double prev = 0.0; // L_l(t_0) = 0
    for (std::size_t i = 1; i < dates_.size(); ++i) {
        const double cur = tranche_loss_at(l, i);
        if (cp > dates_[i]) {
            legs.contingent += discounts_[i] * (cur - prev);
            legs.fee += accruals_[i] * discounts_[i] * (width - cur);
        }
        prev = cur;
    }
    return legs;
}

namespace {

TrancheSpec single_tranche_default() { return TrancheSpec{}; }

} // namespace

LegPair cds_legs_on_path(std::size_t k, const DefaultTimeline& timeline,
                         const ContractTerms& terms) {
    PathPricer pricer(terms, single_tranche_default(), timeline.tau.size());
    pricer.prepare(timeline.tau);
    return pricer.cds(k, std::nullopt);
}

LegPair cds_legs_with_counterparty(std::size_t k, const DefaultTimeline& timeline,
                                   const ContractTerms& terms) {
    if (!timeline.counterparty_tau)
        throw ContractError("counterparty legs requested on a timeline without counterparty time");
    PathPricer pricer(terms, single_tranche_default(), timeline.tau.size());
    pricer.prepare(timeline.tau);
    return pricer.cds(k, timeline.counterparty_tau);
}

LegPair cdo_legs_on_path(std::size_t l, const DefaultTimeline& timeline,
                         const ContractTerms& terms, const TrancheSpec& tranches,
                         LossOptions opts) {
    PathPricer pricer(terms, tranches, timeline.tau.size(), opts);
    pricer.prepare(timeline.tau);
    return pricer.cdo(l, std::nullopt);
}

LegPair cdo_legs_with_counterparty(std::size_t l, const DefaultTimeline& timeline,
                                   const ContractTerms& terms, const TrancheSpec& tranches,
                                   LossOptions opts) {
    if (!timeline.counterparty_tau)
        throw ContractError("counterparty legs requested on a timeline without counterparty time");
    PathPricer pricer(terms, tranches, timeline.tau.size(), opts);
    pricer.prepare(timeline.tau);
    return pricer.cdo(l, timeline.counterparty_tau);
}

void LegMoments::add(const LegPair& legs) {
    c_.add(legs.contingent);
    f_.add(legs.fee);
    cc_.add(legs.contingent * legs.contingent);
    ff_.add(legs.fee * legs.fee);
    cf_.add(legs.contingent * legs.fee);
    ++paths_;
}

void LegMoments::merge(const LegMoments& other) {
    c_.merge(other.c_);
    f_.merge(other.f_);
    cc_.merge(other.cc_);
    ff_.merge(other.ff_);
    cf_.merge(other.cf_);
    paths_ += other.paths_;
}

namespace {

MCEstimate estimate(const ExactSum& sum, const ExactSum& sum_sq, std::uint64_t paths,
                    std::uint64_t seed) {
    MCEstimate est;
    est.paths = paths;
    est.seed = seed;
    if (paths == 0)
        return est;
    const double n = static_cast<double>(paths);
    est.value = sum.value() / n;
    if (paths > 1) {
        const double var = std::max(0.0, (sum_sq.value() - n * est.value * est.value) / (n - 1.0));
        est.std_error = std::sqrt(var / n);
    }
    return est;
}

} // namespace

MCEstimate LegMoments::contingent(std::uint64_t seed) const {
    return estimate(c_, cc_, paths_, seed);
}

MCEstimate LegMoments::fee(std::uint64_t seed) const { return estimate(f_, ff_, paths_, seed); }

double LegMoments::mean_covariance() const {
    if (paths_ < 2)
        return 0.0;
    const double n = static_cast<double>(paths_);
    const double mc = c_.value() / n;
    const double mf = f_.value() / n;
    return (cf_.value() - n * mc * mf) / (n - 1.0) / n;
}

MCEstimate swap_rate(const MCEstimate& contingent, const MCEstimate& fee, double mean_covariance) {
    if (!(fee.value > 0.0))
        throw ContractError("degenerate contract: fee leg value must be positive");
    MCEstimate rate;
    rate.paths = contingent.paths;
    rate.seed = contingent.seed;
    rate.value = contingent.value / fee.value;
    const double s = rate.value;
    const double var = contingent.std_error * contingent.std_error -
                       2.0 * s * mean_covariance + s * s * fee.std_error * fee.std_error;
    rate.std_error = std::sqrt(std::max(0.0, var)) / fee.value;
    return rate;
}

MCEstimate swap_rate(const LegMoments& moments, std::uint64_t seed) {
    return swap_rate(moments.contingent(seed), moments.fee(seed), moments.mean_covariance());
}

} // namespace ccmix
