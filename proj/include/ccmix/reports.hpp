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
#include <ostream>
#include <string>
#include <vector>

#include "ccmix/analytic.hpp"
#include "ccmix/driver.hpp"

namespace ccmix {

/// Reference data set: n = 40, r = 0.05, T = 3, N = 6 semiannual payments,
/// a = 0.01, R = 0.5, d = 0, product copula, tranches 0/0.15/0.3/1.
SimulationPlan reference_plan(std::uint64_t paths, std::uint64_t seed);

/// One reported cell: label columns plus an estimate.
struct TableRow {
    std::vector<std::string> labels;
    std::vector<MCEstimate> cells;
};

struct ResultTable {
    std::vector<std::string> label_header;
    std::vector<std::string> cell_header; ///< one name per estimate column
    std::vector<TableRow> rows;

    /// Header, then one line per row; each estimate is followed by its
    /// standard error column ("<name>_se").
    void write_csv(std::ostream& os, int precision) const;
};

struct TableOptions {
    std::uint64_t paths = 1'000'000;
    std::uint64_t seed = 1;
    std::size_t workers = 1;
    std::size_t blocks = 256;
    /// Counterparty overrides for table 4 (defaults a_B = a/10, c_B = c).
    std::optional<double> a_B;
    std::optional<double> c_B;
};

/// Regenerates reference table `id` (1..4) by Monte Carlo.
///  1: CDO tranche rates, Gaussian copula, rho x c grid.
///  2: kth-to-default and tranche rates, product/exponential/Gaussian x c.
///  3: Gaussian rho = 0.5, c = 3 with decay d in {0, 1, 10, 100, inf}.
///  4: table 1 with and without counterparty risk.
/// Throws ConfigError for an unknown id.
ResultTable reproduce_table(int id, const TableOptions& opts);

/// `price` command output: one line per target.
void write_run_csv(std::ostream& os, const RunResult& result, int precision);

struct DensityGrid {
    double t0 = 0.0;
    double t1 = 0.0;
    std::size_t steps = 0; ///< number of intervals; steps + 1 points

    /// Parses "t0:t1:steps". Throws ConfigError("grid", ...).
    static DensityGrid parse(const std::string& text);
};

/// Tabulates (t, f, F) of tau^k on the grid; d must be 0.
void write_density_csv(std::ostream& os, std::size_t k, std::size_t n,
                       const IntensityParams& p, const DensityGrid& grid, int precision);

} // namespace ccmix
