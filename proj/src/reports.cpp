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

#include "ccmix/reports.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "ccmix/errors.hpp"

namespace ccmix {

namespace {

const std::vector<std::size_t> kCdsRows{1, 2, 5, 10, 20, 30};
const std::vector<double> kContagion{0.0, 0.3, 3.0};
const std::vector<double> kRho{0.0, 0.5, 0.9};

std::string fixed(double v, int precision) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(precision) << v;
    return os.str();
}

std::string tranche_label(const TrancheSpec& t, std::size_t l) {
    std::ostringstream os;
    os << t.lower(l) << '-' << t.upper(l);
    return os.str();
}

std::string c_label(double c) { return "c" + fixed(c, 1); }

SimulationPlan base_plan(const TableOptions& opts) {
    SimulationPlan plan = reference_plan(opts.paths, opts.seed);
    plan.workers = opts.workers;
    plan.blocks = opts.blocks;
    return plan;
}

// Rows: kth-to-default orders, then tranches. Columns: one plan each.
ResultTable cds_and_tranche_table(const std::vector<std::string>& columns,
                                  const std::vector<SimulationPlan>& plans) {
    ResultTable table;
    table.label_header = {"row"};
    table.cell_header = columns;
    std::vector<RunResult> results;
    for (const auto& plan : plans)
        results.push_back(run(plan));
    const TrancheSpec& tranches = plans.front().tranches;
    for (std::size_t k : kCdsRows) {
        TableRow row{{std::to_string(k)}, {}};
        for (const auto& r : results)
            row.cells.push_back(r.at({Target::Kind::Cds, k, false}).rate);
        table.rows.push_back(row);
    }
    for (std::size_t l = 1; l <= tranches.count(); ++l) {
        TableRow row{{tranche_label(tranches, l)}, {}};
        for (const auto& r : results)
            row.cells.push_back(r.at({Target::Kind::Tranche, l, false}).rate);
        table.rows.push_back(row);
    }
    return table;
}

ResultTable rho_c_table(const TableOptions& opts, bool with_counterparty) {
    ResultTable table;
    table.label_header = {"rho", "tranche"};
    for (double c : kContagion) {
        if (with_counterparty) {
            table.cell_header.push_back("GausC_" + c_label(c));
            table.cell_header.push_back("GausCCR_" + c_label(c));
        } else {
            table.cell_header.push_back(c_label(c));
        }
    }
    for (double rho : kRho) {
        std::vector<RunResult> results;
        SimulationPlan plan = base_plan(opts);
        for (double c : kContagion) {
            plan.copula = GaussianOneFactorCopula{rho};
            plan.intensity.c = c;
            plan.cds_orders.clear();
            plan.tranche_indices = {1, 2, 3};
            if (with_counterparty)
                plan.counterparty = CounterpartyParams{opts.a_B.value_or(plan.intensity.a / 10.0),
                                                       opts.c_B.value_or(c)};
            results.push_back(run(plan));
        }
        for (std::size_t l = 1; l <= plan.tranches.count(); ++l) {
            TableRow row{{fixed(rho, 1), tranche_label(plan.tranches, l)}, {}};
            for (const auto& r : results) {
                row.cells.push_back(r.at({Target::Kind::Tranche, l, false}).rate);
                if (with_counterparty)
                    row.cells.push_back(r.at({Target::Kind::Tranche, l, true}).rate);
            }
            table.rows.push_back(row);
        }
    }
    return table;
}

} // namespace

SimulationPlan reference_plan(std::uint64_t paths, std::uint64_t seed) {
    SimulationPlan plan;
    plan.n_names = 40;
    plan.paths = paths;
    plan.seed = seed;
    plan.copula = ProductCopula{};
    plan.intensity = IntensityParams{0.01, 0.0, Decay::none()};
    plan.terms = ContractTerms::regular(3.0, 6, 0.5, 0.05);
    plan.tranches = TrancheSpec{{0.0, 0.15, 0.3, 1.0}};
    plan.cds_orders = kCdsRows;
    plan.tranche_indices = {1, 2, 3};
    return plan;
}

void ResultTable::write_csv(std::ostream& os, int precision) const {
    bool first = true;
    auto sep = [&] {
        if (!first)
            os << ',';
        first = false;
    };
    for (const auto& h : label_header) {
        sep();
        os << h;
    }
    for (const auto& h : cell_header) {
        sep();
        os << h << ',' << h << "_se";
    }
    os << '\n';
    for (const auto& row : rows) {
        first = true;
        for (const auto& l : row.labels) {
            sep();
            os << l;
        }
        for (const auto& c : row.cells) {
            sep();
            os << fixed(c.value, precision) << ',' << fixed(c.std_error, precision);
        }
        os << '\n';
    }
}

ResultTable reproduce_table(int id, const TableOptions& opts) {
    switch (id) {
    case 1:
        return rho_c_table(opts, false);
    case 2: {
        std::vector<std::string> columns;
        std::vector<SimulationPlan> plans;
        const std::vector<std::pair<std::string, CopulaSpec>> copulas{
            {"ProdC", ProductCopula{}},
            {"ExpC", ExponentialCopula{0.01, 0.1, ShockMap::Survival}},
            {"GausC", GaussianOneFactorCopula{0.5}}};
        for (double c : kContagion) {
            for (const auto& [name, copula] : copulas) {
                SimulationPlan plan = base_plan(opts);
                plan.copula = copula;
                plan.intensity.c = c;
                columns.push_back(name + "_" + c_label(c));
                plans.push_back(plan);
            }
        }
        return cds_and_tranche_table(columns, plans);
    }
    case 3: {
        std::vector<std::string> columns;
        std::vector<SimulationPlan> plans;
        const std::vector<std::pair<std::string, Decay>> decays{
            {"d0", Decay::none()},          {"d1", Decay::finite(1.0)},
            {"d10", Decay::finite(10.0)},   {"d100", Decay::finite(100.0)},
            {"dinf", Decay::infinity()}};
        for (const auto& [name, d] : decays) {
            SimulationPlan plan = base_plan(opts);
            plan.copula = GaussianOneFactorCopula{0.5};
            plan.intensity = IntensityParams{0.01, 3.0, d};
            columns.push_back(name);
            plans.push_back(plan);
        }
        return cds_and_tranche_table(columns, plans);
    }
    case 4:
        return rho_c_table(opts, true);
    default:
        throw ConfigError("id", "table id must be 1, 2, 3 or 4");
    }
}

void write_run_csv(std::ostream& os, const RunResult& result, int precision) {
    os << "target,index,counterparty,rate,rate_se,contingent,contingent_se,fee,fee_se,paths,seed\n";
    for (const auto& [target, est] : result) {
        os << (target.kind == Target::Kind::Cds ? "cds" : "tranche") << ',' << target.index << ','
           << (target.counterparty ? 1 : 0) << ',' << fixed(est.rate.value, precision) << ','
           << fixed(est.rate.std_error, precision) << ',' << fixed(est.contingent.value, precision)
           << ',' << fixed(est.contingent.std_error, precision) << ','
           << fixed(est.fee.value, precision) << ',' << fixed(est.fee.std_error, precision) << ','
           << est.rate.paths << ',' << est.rate.seed << '\n';
    }
}

DensityGrid DensityGrid::parse(const std::string& text) {
    DensityGrid grid;
    std::istringstream is(text);
    char c1 = 0;
    char c2 = 0;
    long long steps = 0;
    if (!(is >> grid.t0 >> c1 >> grid.t1 >> c2 >> steps) || c1 != ':' || c2 != ':' ||
        !(is >> std::ws).eof())
        throw ConfigError("grid", "expected \"t0:t1:steps\"");
    if (!(grid.t0 >= 0.0) || !(grid.t1 > grid.t0) || !std::isfinite(grid.t1))
        throw ConfigError("grid", "need 0 <= t0 < t1 < inf");
    if (steps < 1)
        throw ConfigError("grid", "steps must be >= 1");
    grid.steps = static_cast<std::size_t>(steps);
    return grid;
}

void write_density_csv(std::ostream& os, std::size_t k, std::size_t n,
                       const IntensityParams& p, const DensityGrid& grid, int precision) {
    const analytic::OrderedDefaultLaw law(k, n, p);
    os << "t,f,F\n";
    for (std::size_t i = 0; i <= grid.steps; ++i) {
        const double t = grid.t0 + (grid.t1 - grid.t0) * static_cast<double>(i) /
                                       static_cast<double>(grid.steps);
        os << fixed(t, precision) << ',' << fixed(law.density(t), precision) << ','
           << fixed(law.cdf(t), precision) << '\n';
    }
}

} // namespace ccmix
