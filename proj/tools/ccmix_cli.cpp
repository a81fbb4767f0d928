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

// ccmix command-line front end.
//
//   ccmix price   --config FILE [--seed S] [--paths P] [--workers W] [--precision D] [--out FILE]
//   ccmix table   --id {1|2|3|4} [--paths P] [--seed S] [--out FILE]
//   ccmix density --k K [--n N] [--a A] [--c C] --grid "t0:t1:steps" [--out FILE]
//
// Exit codes: 0 success, 2 configuration error, 3 numerical error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "ccmix/config.hpp"
#include "ccmix/errors.hpp"
#include "ccmix/reports.hpp"
#include "ccmix/simd/kernels.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ccmix::ConfigError("config", "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

template <class Writer>
void emit(const std::string& out_path, Writer&& write) {
    if (out_path.empty() || out_path == "-") {
        write(std::cout);
        return;
    }
    std::ofstream out(out_path);
    if (!out)
        throw ccmix::ConfigError("out", "cannot write " + out_path);
    write(out);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Monte Carlo pricing of basket CDS and CDO tranches under a "
                 "copula-contagion default model"};
    app.require_subcommand(1);
    app.fallthrough();

    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> paths;
    std::optional<std::size_t> workers;
    std::optional<int> precision;
    std::string out_path;
    std::string isa = "auto";
    app.add_option("--seed", seed, "Random seed");
    app.add_option("--paths", paths, "Number of Monte Carlo paths")->check(CLI::PositiveNumber);
    app.add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
    app.add_option("--precision", precision, "Decimals in CSV output")->check(CLI::Range(0, 17));
    app.add_option("--out", out_path, "Output CSV file (default: stdout)");
    app.add_option("--isa", isa, "Kernel ISA: auto, scalar, avx2")
        ->check(CLI::IsMember({"auto", "scalar", "avx2"}));

    auto* price = app.add_subcommand("price", "Price the targets of one run configuration");
    std::string config_path;
    price->add_option("--config", config_path, "JSON run configuration")->required();

    auto* table = app.add_subcommand("table", "Regenerate a reference table");
    int table_id = 0;
    std::optional<double> a_B;
    std::optional<double> c_B;
    std::size_t blocks = 256;
    table->add_option("--id", table_id, "Table id")->required()->check(CLI::Range(1, 4));
    table->add_option("--a-B", a_B, "Table 4 counterparty base hazard (default a/10)");
    table->add_option("--c-B", c_B, "Table 4 counterparty contagion (default c)");
    table->add_option("--blocks", blocks, "Logical path blocks")->check(CLI::PositiveNumber);

    auto* density = app.add_subcommand("density", "Tabulate the analytic law of tau^k (d = 0)");
    std::size_t k = 1;
    std::size_t n = 40;
    double a = 0.01;
    double c = 0.0;
    std::string grid;
    density->add_option("--k", k, "Default order")->required();
    density->add_option("--n", n, "Number of names");
    density->add_option("--a", a, "Base hazard");
    density->add_option("--c", c, "Contagion multiplier");
    density->add_option("--grid", grid, "t0:t1:steps")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (isa != "auto")
            ccmix::simd::set_isa(isa == "avx2" ? ccmix::simd::Isa::Avx2 : ccmix::simd::Isa::Scalar);

        if (*price) {
            ccmix::RunConfig cfg = ccmix::parse_config(read_file(config_path));
            if (seed)
                cfg.plan.seed = *seed;
            if (paths)
                cfg.plan.paths = *paths;
            if (workers)
                cfg.plan.workers = *workers;
            if (precision)
                cfg.output.precision = *precision;
            if (!out_path.empty())
                cfg.output.csv = out_path;
            const ccmix::RunResult result = ccmix::run(cfg.plan);
            emit(cfg.output.csv, [&](std::ostream& os) {
                ccmix::write_run_csv(os, result, cfg.output.precision);
            });
        } else if (*table) {
            ccmix::TableOptions opts;
            opts.paths = paths.value_or(opts.paths);
            opts.seed = seed.value_or(opts.seed);
            opts.workers = workers.value_or(opts.workers);
            opts.blocks = blocks;
            opts.a_B = a_B;
            opts.c_B = c_B;
            const ccmix::ResultTable t = ccmix::reproduce_table(table_id, opts);
            emit(out_path, [&](std::ostream& os) { t.write_csv(os, precision.value_or(4)); });
        } else if (*density) {
            const ccmix::IntensityParams p{a, c, ccmix::Decay::none()};
            const auto g = ccmix::DensityGrid::parse(grid);
            emit(out_path, [&](std::ostream& os) {
                ccmix::write_density_csv(os, k, n, p, g, precision.value_or(8));
            });
        }
    } catch (const ccmix::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ccmix::UnsupportedModel& e) {
        std::cerr << "unsupported model: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::out_of_range& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const ccmix::NumericalError& e) {
        std::cerr << "numerical error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
