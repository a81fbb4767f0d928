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

#include "ccmix/driver.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <iomanip>
#include <sstream>
#include <thread>

#include "ccmix/errors.hpp"

namespace ccmix {

void validate(const SimulationPlan& plan) {
    if (plan.n_names < 1)
        throw ConfigError("n_names", "must be at least 1");
    if (plan.paths < 1)
        throw ConfigError("paths", "must be at least 1");
    if (plan.workers < 1)
        throw ConfigError("workers", "must be at least 1");
    if (plan.blocks < 1)
        throw ConfigError("blocks", "must be at least 1");
    validate(plan.copula);
    validate(plan.intensity);
    if (plan.counterparty)
        validate(*plan.counterparty);
    validate(plan.terms);
    validate(plan.tranches);
    for (std::size_t k : plan.cds_orders)
        if (k < 1 || k > plan.n_names)
            throw ConfigError("targets.cds", "order k must lie in [1, n_names]");
    for (std::size_t l : plan.tranche_indices)
        if (l < 1 || l > plan.tranches.count())
            throw ConfigError("targets.tranches", "tranche index must lie in [1, M]");
}

std::string to_string(const Target& t) {
    std::string s = t.kind == Target::Kind::Cds ? "cds" : "tranche";
    s += ":" + std::to_string(t.index);
    if (t.counterparty)
        s += ":cr";
    return s;
}

std::vector<Target> targets_of(const SimulationPlan& plan) {
    std::vector<Target> out;
    auto push = [&](Target::Kind kind, std::size_t idx) {
        out.push_back({kind, idx, false});
        if (plan.counterparty)
            out.push_back({kind, idx, true});
    };
    for (std::size_t k : plan.cds_orders)
        push(Target::Kind::Cds, k);
    for (std::size_t l : plan.tranche_indices)
        push(Target::Kind::Tranche, l);
    return out;
}

std::uint64_t fingerprint(const SimulationPlan& plan) {
    std::ostringstream os;
    os << std::setprecision(17) << plan.n_names << '|' << plan.paths << '|' << plan.seed << '|'
       << plan.blocks << '|' << plan.copula.index() << '|';
    std::visit(
        [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ExponentialCopula>)
                os << c.c0 << ',' << c.c1 << ',' << static_cast<int>(c.map);
            else if constexpr (std::is_same_v<C, GaussianOneFactorCopula>)
                os << c.rho;
        },
        plan.copula);
    const auto& p = plan.intensity;
    os << '|' << p.a << ',' << p.c << ',' << p.d.rate << ',' << p.d.infinite << '|';
    if (plan.counterparty)
        os << plan.counterparty->a_B << ',' << plan.counterparty->c_B << ','
           << static_cast<int>(plan.coupling);
    os << '|' << plan.terms.maturity << ',' << plan.terms.recovery << ',' << plan.terms.rate;
    for (double t : plan.terms.payment_dates)
        os << ',' << t;
    os << '|';
    for (double k : plan.tranches.attachments)
        os << k << ',';
    os << '|' << plan.loss.loss_given_default_scaling << '|';
    for (const Target& t : targets_of(plan))
        os << to_string(t) << ',';

    // FNV-1a
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : os.str()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    return h;
}

void PartialAccumulator::merge(const PartialAccumulator& other) {
    if (other.fingerprint != fingerprint || other.targets != targets)
        throw MergeError("cannot merge partial results of different plans");
    for (std::size_t i = 0; i < moments.size(); ++i)
        moments[i].merge(other.moments[i]);
}

PathSimulator::PathSimulator(const SimulationPlan& plan)
    : n_(plan.n_names), copula_(plan.copula), counterparty_(plan.counterparty),
      coupling_(plan.coupling), generator_(plan.intensity, plan.n_names),
      pricer_(plan.terms, plan.tranches, plan.n_names, plan.loss), targets_(targets_of(plan)),
      uniforms_(plan.n_names + 1), thresholds_(plan.n_names),
      timeline_{std::vector<double>(plan.n_names), std::nullopt},
      horizon_(plan.terms.maturity) {}

const DefaultTimeline& PathSimulator::next(RandomStream& rng) {
    // Always n + 1 coordinates so that the stream, and therefore the
    // portfolio path, does not depend on whether a counterparty is priced.
    sample_uniforms(copula_, rng, uniforms_);
    to_sorted_thresholds(std::span<const double>(uniforms_).first(n_), thresholds_);
    generator_.generate(thresholds_, timeline_.tau, horizon_);
    pricer_.prepare(timeline_.tau);
    if (counterparty_) {
        const double e_B = coupling_ == CounterpartyCoupling::Copula
                               ? -std::log1p(-uniforms_[n_])
                               : rng.exponential(1.0);
        timeline_.counterparty_tau = counterparty_default_time(*counterparty_, timeline_.tau, e_B);
    } else {
        timeline_.counterparty_tau.reset();
    }
    return timeline_;
}

void PathSimulator::price(std::span<LegPair> out) const {
    for (std::size_t i = 0; i < targets_.size(); ++i) {
        const Target& t = targets_[i];
        const std::optional<double> gate =
            t.counterparty ? timeline_.counterparty_tau : std::nullopt;
        out[i] = t.kind == Target::Kind::Cds ? pricer_.cds(t.index, gate)
                                             : pricer_.cdo(t.index, gate);
    }
}

RandomStream block_stream(std::uint64_t seed, std::size_t block) {
    Xoshiro256pp engine(seed);
    for (std::size_t b = 0; b < block; ++b)
        engine.jump();
    return RandomStream(engine);
}

std::pair<std::uint64_t, std::uint64_t> block_range(std::uint64_t paths, std::size_t blocks,
                                                    std::size_t block) {
    const auto begin = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(paths) * block / blocks);
    const auto end = static_cast<std::uint64_t>(
        static_cast<unsigned __int128>(paths) * (block + 1) / blocks);
    return {begin, end - begin};
}

PartialAccumulator simulate_block(const SimulationPlan& plan, std::size_t block) {
    PathSimulator sim(plan);
    PartialAccumulator acc;
    acc.fingerprint = fingerprint(plan);
    acc.seed = plan.seed;
    acc.targets = sim.targets();
    acc.moments.resize(acc.targets.size());

    RandomStream rng = block_stream(plan.seed, block);
    std::vector<LegPair> legs(acc.targets.size());
    const auto [first, count] = block_range(plan.paths, plan.blocks, block);
    for (std::uint64_t p = 0; p < count; ++p) {
        try {
            sim.next(rng);
        } catch (const NumericalError& e) {
            std::ostringstream msg;
            msg << e.what() << " (path " << first + p << ", block " << block << ")";
            throw NumericalError(msg.str());
        }
        sim.price(legs);
        for (std::size_t i = 0; i < legs.size(); ++i)
            acc.moments[i].add(legs[i]);
    }
    return acc;
}

RunResult finalize(const PartialAccumulator& acc) {
    RunResult result;
    for (std::size_t i = 0; i < acc.targets.size(); ++i) {
        const LegMoments& m = acc.moments[i];
        TargetEstimate est;
        est.contingent = m.contingent(acc.seed);
        est.fee = m.fee(acc.seed);
        est.rate = swap_rate(m, acc.seed);
        result.emplace(acc.targets[i], est);
    }
    return result;
}

RunResult merge(std::span<const PartialAccumulator> partials) {
    if (partials.empty())
        throw MergeError("nothing to merge");
    PartialAccumulator total = partials.front();
    for (std::size_t i = 1; i < partials.size(); ++i)
        total.merge(partials[i]);
    return finalize(total);
}

RunResult run(const SimulationPlan& plan) {
    validate(plan);
    std::vector<PartialAccumulator> partials(plan.blocks);
    std::vector<std::exception_ptr> errors(plan.blocks);
    std::atomic<std::size_t> next_block{0};

    auto work = [&] {
        for (std::size_t b = next_block++; b < plan.blocks; b = next_block++) {
            try {
                partials[b] = simulate_block(plan, b);
            } catch (...) {
                errors[b] = std::current_exception();
            }
        }
    };

    const std::size_t threads = std::min(plan.workers, plan.blocks);
    if (threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(threads);
        for (std::size_t i = 0; i < threads; ++i)
            pool.emplace_back(work);
    }
    for (const auto& e : errors)
        if (e)
            std::rethrow_exception(e);
    return merge(partials);
}

} // namespace ccmix
