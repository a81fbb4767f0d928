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

#include "ccmix/config.hpp"

#include <algorithm>
#include <initializer_list>
#include <limits>

#include <json.hpp>

#include "ccmix/errors.hpp"

namespace ccmix {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::string& path,
                    std::initializer_list<std::string_view> allowed) {
    if (!obj.is_object())
        throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
            throw ConfigError(path.empty() ? key : path + "." + key, "unknown key");
    }
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

double get_number(const json& obj, const std::string& path, const std::string& key,
                  double fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number())
        throw ConfigError(join(path, key), "expected a number");
    return v.get<double>();
}

std::uint64_t get_count(const json& obj, const std::string& path, const std::string& key,
                        std::uint64_t fallback, std::uint64_t minimum) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw ConfigError(join(path, key), "expected an integer");
    if (v.is_number_unsigned()) {
        const auto u = v.get<std::uint64_t>();
        if (u < minimum)
            throw ConfigError(join(path, key), "must be >= " + std::to_string(minimum));
        return u;
    }
    const auto s = v.get<std::int64_t>();
    if (s < 0 || static_cast<std::uint64_t>(s) < minimum)
        throw ConfigError(join(path, key), "must be >= " + std::to_string(minimum));
    return static_cast<std::uint64_t>(s);
}

std::string get_string(const json& obj, const std::string& path, const std::string& key,
                       const std::string& fallback) {
    if (!obj.contains(key))
        return fallback;
    const json& v = obj.at(key);
    if (!v.is_string())
        throw ConfigError(join(path, key), "expected a string");
    return v.get<std::string>();
}

std::vector<std::size_t> get_indices(const json& obj, const std::string& path,
                                     const std::string& key) {
    std::vector<std::size_t> out;
    if (!obj.contains(key))
        return out;
    const json& v = obj.at(key);
    if (!v.is_array())
        throw ConfigError(join(path, key), "expected an array of integers");
    for (const json& e : v) {
        if (!e.is_number_integer() || e.get<std::int64_t>() < 1)
            throw ConfigError(join(path, key), "entries must be integers >= 1");
        out.push_back(e.get<std::size_t>());
    }
    return out;
}

CopulaSpec parse_copula(const json& j) {
    const std::string path = "copula";
    if (!j.is_object())
        throw ConfigError(path, "expected an object");
    const std::string type = get_string(j, path, "type", "");
    if (type == "product") {
        reject_unknown(j, path, {"type"});
        return ProductCopula{};
    }
    if (type == "exponential") {
        reject_unknown(j, path, {"type", "c0", "c1", "map"});
        ExponentialCopula e;
        e.c0 = get_number(j, path, "c0", e.c0);
        e.c1 = get_number(j, path, "c1", e.c1);
        const std::string map = get_string(j, path, "map", "survival");
        if (map == "survival")
            e.map = ShockMap::Survival;
        else if (map == "distribution")
            e.map = ShockMap::Distribution;
        else
            throw ConfigError("copula.map", "expected \"survival\" or \"distribution\"");
        return e;
    }
    if (type == "gaussian") {
        reject_unknown(j, path, {"type", "rho"});
        return GaussianOneFactorCopula{get_number(j, path, "rho", 0.0)};
    }
    throw ConfigError("copula.type", "expected \"product\", \"exponential\" or \"gaussian\"");
}

IntensityParams parse_intensity(const json& j) {
    const std::string path = "intensity";
    reject_unknown(j, path, {"a", "c", "d"});
    IntensityParams p;
    p.a = get_number(j, path, "a", p.a);
    p.c = get_number(j, path, "c", p.c);
    if (j.contains("d")) {
        const json& d = j.at("d");
        if (d.is_string()) {
            if (d.get<std::string>() != "inf")
                throw ConfigError("intensity.d", "expected a number or \"inf\"");
            p.d = Decay::infinity();
        } else if (d.is_number()) {
            p.d = Decay::finite(d.get<double>());
        } else {
            throw ConfigError("intensity.d", "expected a number or \"inf\"");
        }
    }
    return p;
}

ContractTerms parse_contract(const json& j) {
    const std::string path = "contract";
    reject_unknown(j, path, {"maturity", "payments", "payment_dates", "recovery", "rate"});
    const double maturity = get_number(j, path, "maturity", 3.0);
    const double recovery = get_number(j, path, "recovery", 0.5);
    const double rate = get_number(j, path, "rate", 0.05);
    if (j.contains("payments") && j.contains("payment_dates"))
        throw ConfigError("contract.payments", "give either payments or payment_dates, not both");
    if (j.contains("payment_dates")) {
        const json& d = j.at("payment_dates");
        if (!d.is_array())
            throw ConfigError("contract.payment_dates", "expected an array of numbers");
        ContractTerms terms;
        terms.maturity = maturity;
        terms.recovery = recovery;
        terms.rate = rate;
        for (const json& t : d) {
            if (!t.is_number())
                throw ConfigError("contract.payment_dates", "expected an array of numbers");
            terms.payment_dates.push_back(t.get<double>());
        }
        return terms;
    }
    const auto payments = get_count(j, path, "payments", 6, 1);
    return ContractTerms::regular(maturity, payments, recovery, rate);
}

} // namespace

RunConfig parse_config(std::string_view text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        std::size_t line = 1;
        const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
        for (std::size_t i = 0; i + 1 < upto; ++i)
            if (text[i] == '\n')
                ++line;
        throw ConfigError("", "syntax error at line " + std::to_string(line) + ": " + e.what());
    }

    reject_unknown(root, "",
                   {"n_names", "paths", "seed", "workers", "blocks", "copula", "intensity",
                    "counterparty", "contract", "tranches", "targets",
                    "loss_given_default_scaling", "output"});

    RunConfig cfg;
    SimulationPlan& plan = cfg.plan;
    plan.n_names = get_count(root, "", "n_names", plan.n_names, 1);
    plan.paths = get_count(root, "", "paths", plan.paths, 1);
    plan.seed = get_count(root, "", "seed", plan.seed, 0);
    plan.workers = get_count(root, "", "workers", plan.workers, 1);
    plan.blocks = get_count(root, "", "blocks", plan.blocks, 1);
    if (root.contains("copula"))
        plan.copula = parse_copula(root.at("copula"));
    if (root.contains("intensity"))
        plan.intensity = parse_intensity(root.at("intensity"));
    if (root.contains("counterparty")) {
        const json& j = root.at("counterparty");
        reject_unknown(j, "counterparty", {"a_B", "c_B", "coupling"});
        CounterpartyParams cp;
        cp.a_B = get_number(j, "counterparty", "a_B", cp.a_B);
        cp.c_B = get_number(j, "counterparty", "c_B", cp.c_B);
        plan.counterparty = cp;
        const std::string coupling = get_string(j, "counterparty", "coupling", "copula");
        if (coupling == "copula")
            plan.coupling = CounterpartyCoupling::Copula;
        else if (coupling == "independent")
            plan.coupling = CounterpartyCoupling::Independent;
        else
            throw ConfigError("counterparty.coupling", "expected \"copula\" or \"independent\"");
    }
    if (root.contains("contract"))
        plan.terms = parse_contract(root.at("contract"));
    if (root.contains("tranches")) {
        const json& t = root.at("tranches");
        if (!t.is_array())
            throw ConfigError("tranches", "expected an array of attachment points");
        plan.tranches.attachments.clear();
        for (const json& k : t) {
            if (!k.is_number())
                throw ConfigError("tranches", "expected an array of attachment points");
            plan.tranches.attachments.push_back(k.get<double>());
        }
    }
    if (root.contains("targets")) {
        const json& t = root.at("targets");
        reject_unknown(t, "targets", {"cds", "tranches"});
        plan.cds_orders = get_indices(t, "targets", "cds");
        plan.tranche_indices = get_indices(t, "targets", "tranches");
    }
    if (root.contains("loss_given_default_scaling")) {
        const json& v = root.at("loss_given_default_scaling");
        if (!v.is_boolean())
            throw ConfigError("loss_given_default_scaling", "expected true or false");
        plan.loss.loss_given_default_scaling = v.get<bool>();
    }
    if (root.contains("output")) {
        const json& o = root.at("output");
        reject_unknown(o, "output", {"csv", "precision"});
        cfg.output.csv = get_string(o, "output", "csv", "");
        cfg.output.precision = static_cast<int>(get_count(o, "output", "precision", 4, 0));
        if (cfg.output.precision > 17)
            throw ConfigError("output.precision", "must be <= 17");
    }
    if (plan.cds_orders.empty() && plan.tranche_indices.empty())
        throw ConfigError("targets", "at least one CDS order or tranche is required");

    validate(plan);
    return cfg;
}

std::string serialize_config(const RunConfig& cfg) {
    const SimulationPlan& plan = cfg.plan;
    json root;
    root["n_names"] = plan.n_names;
    root["paths"] = plan.paths;
    root["seed"] = plan.seed;
    root["workers"] = plan.workers;
    root["blocks"] = plan.blocks;

    json copula;
    std::visit(
        [&](const auto& c) {
            using C = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<C, ProductCopula>) {
                copula["type"] = "product";
            } else if constexpr (std::is_same_v<C, ExponentialCopula>) {
                copula["type"] = "exponential";
                copula["c0"] = c.c0;
                copula["c1"] = c.c1;
                copula["map"] = c.map == ShockMap::Survival ? "survival" : "distribution";
            } else {
                copula["type"] = "gaussian";
                copula["rho"] = c.rho;
            }
        },
        plan.copula);
    root["copula"] = copula;

    json intensity;
    intensity["a"] = plan.intensity.a;
    intensity["c"] = plan.intensity.c;
    if (plan.intensity.d.infinite)
        intensity["d"] = "inf";
    else
        intensity["d"] = plan.intensity.d.rate;
    root["intensity"] = intensity;

    if (plan.counterparty) {
        root["counterparty"] = {
            {"a_B", plan.counterparty->a_B},
            {"c_B", plan.counterparty->c_B},
            {"coupling", plan.coupling == CounterpartyCoupling::Copula ? "copula" : "independent"}};
    }
    root["contract"] = {{"maturity", plan.terms.maturity},
                        {"payment_dates", plan.terms.payment_dates},
                        {"recovery", plan.terms.recovery},
                        {"rate", plan.terms.rate}};
    root["tranches"] = plan.tranches.attachments;
    root["targets"] = {{"cds", plan.cds_orders}, {"tranches", plan.tranche_indices}};
    root["loss_given_default_scaling"] = plan.loss.loss_given_default_scaling;
    root["output"] = {{"csv", cfg.output.csv}, {"precision", cfg.output.precision}};
    return root.dump(2) + "\n";
}

bool operator==(const RunConfig& a, const RunConfig& b) {
    const SimulationPlan& x = a.plan;
    const SimulationPlan& y = b.plan;
    return x.n_names == y.n_names && x.paths == y.paths && x.seed == y.seed &&
           x.workers == y.workers && x.blocks == y.blocks && x.copula == y.copula &&
           x.intensity == y.intensity && x.counterparty == y.counterparty &&
           (!x.counterparty || x.coupling == y.coupling) && x.terms == y.terms &&
           x.tranches == y.tranches &&
           x.loss.loss_given_default_scaling == y.loss.loss_given_default_scaling &&
           x.cds_orders == y.cds_orders && x.tranche_indices == y.tranche_indices &&
           a.output == b.output;
}

} // namespace ccmix
