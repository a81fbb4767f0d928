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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ccmix/contagion.hpp"
#include "ccmix/copulas.hpp"
#include "ccmix/pricing.hpp"

namespace ccmix {

/// Source of the counterparty's default threshold.
enum class CounterpartyCoupling {
    /// Extra coordinate of the portfolio copula (reproduces the reference
    /// counterparty tables).
    Copula,
    /// Independent standard exponential.
    Independent,
};

struct SimulationPlan {
    std::size_t n_names = 40;
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    /// Logical partition of the path budget; results depend on (seed, paths,
    /// blocks) and never on `workers`.
    std::size_t blocks = 256;

    CopulaSpec copula = ProductCopula{};
    IntensityParams intensity;
    std::optional<CounterpartyParams> counterparty;
    CounterpartyCoupling coupling = CounterpartyCoupling::Copula;
    ContractTerms terms = ContractTerms::regular(3.0, 6, 0.5, 0.05);
    TrancheSpec tranches;
    LossOptions loss;

    std::vector<std::size_t> cds_orders;      ///< k values, 1-based
    std::vector<std::size_t> tranche_indices; ///< l values, 1-based
};

/// Throws ConfigError naming the offending field.
void validate(const SimulationPlan& plan);

struct Target {
    enum class Kind { Cds, Tranche };
    Kind kind = Kind::Cds;
    std::size_t index = 1;
    /// Legs gated by counterparty survival.
    bool counterparty = false;

    friend auto operator<=>(const Target&, const Target&) = default;
};

std::string to_string(const Target& t);

/// Requested targets in evaluation order: each CDS order then each tranche,
/// and, when the plan has a counterparty, the gated variant after each.
std::vector<Target> targets_of(const SimulationPlan& plan);

/// Hash of every plan field that influences simulated values.
std::uint64_t fingerprint(const SimulationPlan& plan);

struct TargetEstimate {
    MCEstimate rate;
    MCEstimate contingent;
    MCEstimate fee;
};

using RunResult = std::map<Target, TargetEstimate>;

/// Accumulated moments of one block (or several merged blocks).
struct PartialAccumulator {
    std::uint64_t fingerprint = 0;
    std::uint64_t seed = 0;
    std::vector<Target> targets;
    std::vector<LegMoments> moments; ///< aligned with `targets`

    void merge(const PartialAccumulator& other);
};

/// Per-path pipeline: copula -> thresholds -> ordered defaults ->
/// counterparty -> legs. Owns all scratch space for one worker.
class PathSimulator {
  public:
    explicit PathSimulator(const SimulationPlan& plan);

    /// Draws one path. The returned timeline stays valid until the next call.
    /// Defaults after the first one beyond maturity are reported as +inf;
    /// they cannot affect any leg.
    const DefaultTimeline& next(RandomStream& rng);

    /// Legs of every target for the last drawn path, in `targets()` order.
    void price(std::span<LegPair> out) const;

    const std::vector<Target>& targets() const { return targets_; }
    const std::vector<double>& thresholds() const { return thresholds_; }

  private:
    std::size_t n_;
    CopulaSpec copula_;
    std::optional<CounterpartyParams> counterparty_;
    CounterpartyCoupling coupling_;
    DefaultTimeGenerator generator_;
    PathPricer pricer_;
    std::vector<Target> targets_;
    std::vector<double> uniforms_;
    std::vector<double> thresholds_;
    DefaultTimeline timeline_;
    double horizon_;
};

/// Random stream of a logical block: the seed's stream jumped `block` times
/// (2^128 draws each).
RandomStream block_stream(std::uint64_t seed, std::size_t block);

/// First path index and path count of a block.
std::pair<std::uint64_t, std::uint64_t> block_range(std::uint64_t paths, std::size_t blocks,
                                                    std::size_t block);

PartialAccumulator simulate_block(const SimulationPlan& plan, std::size_t block);

/// Folds partials in sequence order. Throws MergeError when partials come
/// from different plans.
RunResult merge(std::span<const PartialAccumulator> partials);

RunResult finalize(const PartialAccumulator& acc);

/// Simulates all blocks on `plan.workers` threads and merges them in block
/// order.
RunResult run(const SimulationPlan& plan);

} // namespace ccmix
