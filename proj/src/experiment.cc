// Copyright 2026 The ALSO Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "also/experiment.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "also/errors.h"
#include "also/parallel.h"
#include "json.hpp"

namespace also {

namespace {

using nlohmann::json;

// 1-based line of the first occurrence of "key" in the source text, 0 if absent.
int line_of(const std::string &text, const std::string &key) {
    const auto pos = text.find('"' + key + '"');
    if (pos == std::string::npos) {
        return 0;
    }
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
}

int line_at_byte(const std::string &text, size_t byte) {
    byte = std::min(byte, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(byte), '\n'));
}

json parse_json(const std::string &text, const std::string &what) {
    try {
        return json::parse(text);
    } catch (const json::parse_error &e) {
        throw ConfigError(what + ": " + e.what(), line_at_byte(text, e.byte > 0 ? e.byte - 1 : 0));
    }
}

class Reader {
   public:
    explicit Reader(const std::string &text) : text_(text) {
    }

    [[noreturn]] void fail(const std::string &key, const std::string &msg) const {
        throw ConfigError(key + ": " + msg, line_of(text_, key));
    }

    uint64_t count(const json &obj, const std::string &key, uint64_t min_value) const {
        const json &v = obj.at(key);
        double d = 0.0;
        if (v.is_number_unsigned() || v.is_number_integer()) {
            if (v.is_number_integer() && v.get<int64_t>() < 0) {
                fail(key, "must be >= " + std::to_string(min_value));
            }
            const auto u = v.get<uint64_t>();
            if (u < min_value) {
                fail(key, "must be >= " + std::to_string(min_value));
            }
            return u;
        }
        if (v.is_number_float()) {
            d = v.get<double>();
            if (d != std::floor(d) || d < static_cast<double>(min_value) || d > 1e18) {
                fail(key, "must be an integer >= " + std::to_string(min_value));
            }
            return static_cast<uint64_t>(d);
        }
        if (v.is_string()) {
            try {
                size_t used = 0;
                d = std::stod(v.get<std::string>(), &used);
                if (used == v.get<std::string>().size() && d == std::floor(d) && d >= static_cast<double>(min_value) &&
                    d <= 1e18) {
                    return static_cast<uint64_t>(d);
                }
            } catch (const std::exception &) {
            }
        }
        fail(key, "must be an integer >= " + std::to_string(min_value));
    }

    double number(const json &obj, const std::string &key) const {
        const json &v = obj.at(key);
        if (!v.is_number()) {
            fail(key, "must be a number");
        }
        return v.get<double>();
    }

    std::string string(const json &obj, const std::string &key) const {
        const json &v = obj.at(key);
        if (!v.is_string()) {
            fail(key, "must be a string");
        }
        return v.get<std::string>();
    }

   private:
    const std::string &text_;
};

void set_path(json &doc, const std::string &path, const json &value) {
    const auto dot = path.find('.');
    if (dot == std::string::npos) {
        doc[path] = value;
        return;
    }
    json &child = doc[path.substr(0, dot)];
    if (!child.is_object()) {
        child = json::object();
    }
    set_path(child, path.substr(dot + 1), value);
}

json number_or_null(double v) {
    return std::isnan(v) ? json(nullptr) : json(v);
}

json stat_json(const Stat &s) {
    return {{"mean", number_or_null(s.mean)}, {"std", number_or_null(s.std)}};
}

const char *target_name(TargetKind kind) {
    switch (kind) {
        case TargetKind::Auto:
            return "auto";
        case TargetKind::Compatible:
            return "compatible";
        case TargetKind::Basis:
            return "basis";
    }
    return "?";
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << text;
}

double min_column(const OptTrace &trace, double TraceRow::*column) {
    double best = kNotLogged;
    for (const auto &row : trace.rows) {
        const double v = row.*column;
        if (!std::isnan(v) && (std::isnan(best) || v < best)) {
            best = v;
        }
    }
    return best;
}

}  // namespace

std::vector<std::string> preset_names() {
    return {"sp8", "sp30", "ae8", "ae30"};
}

std::string preset_config(const std::string &name) {
    if (name == "sp8") {
        return R"({"task": "state-prep", "n": 8, "d": 2,
 "backends": ["exact", "shots:10", "shadow:100000", "shadow:500000"],
 "optimizer": {"kind": "spsa", "R": 3000, "s": 0.5},
 "instances": 5, "seed": 8, "output": "runs/sp8"})";
    }
    if (name == "sp30") {
        return R"({"task": "state-prep", "n": 30, "d": 4, "target": "basis",
 "backends": ["shadow:500000"],
 "optimizer": {"kind": "spsa", "R": 9000, "s": 0.5},
 "instances": 5, "seed": 30, "output": "runs/sp30"})";
    }
    if (name == "ae8") {
        return R"({"task": "autoencoder", "n": 8, "n_B": 4, "d": 2,
 "backends": ["exact", "shots:10", "shadow:100000", "shadow:500000"],
 "optimizer": {"kind": "spsa", "R": 3000, "s": 0.3},
 "instances": 5, "seed": 88, "output": "runs/ae8"})";
    }
    if (name == "ae30") {
        return R"({"task": "autoencoder", "n": 30, "n_B": 10, "d": 4,
 "backends": ["shadow:500000"],
 "optimizer": {"kind": "spsa", "R": 9000, "s": 0.3},
 "instances": 5, "seed": 3030, "output": "runs/ae30"})";
    }
    throw ConfigError("unknown preset '" + name + "'");
}

ExperimentConfig parse_config(const std::string &text, const std::vector<std::string> &overrides) {
    json doc = parse_json(text, "config");
    if (!doc.is_object()) {
        throw ConfigError("config must be a JSON object", 1);
    }
    if (doc.contains("preset")) {
        if (!doc["preset"].is_string()) {
            throw ConfigError("preset: must be a string", line_of(text, "preset"));
        }
        json base;
        try {
            base = parse_json(preset_config(doc["preset"].get<std::string>()), "preset");
        } catch (const ConfigError &e) {
            throw ConfigError(e.what(), line_of(text, "preset"));
        }
        base.merge_patch(doc);
        doc = std::move(base);
        doc.erase("preset");
    }
    for (const auto &o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw ConfigError("override '" + o + "' is not key=value");
        }
        const std::string key = o.substr(0, eq);
        const std::string raw = o.substr(eq + 1);
        json value = json::parse(raw, nullptr, false);
        if (value.is_discarded()) {
            value = raw;
        }
        set_path(doc, key, value);
    }

    static const std::set<std::string> known = {"task",    "n",        "d",      "n_B",        "brick",
                                                "target",  "backends", "optimizer", "instances", "seed",
                                                "output",  "objectives", "bench"};
    for (const auto &[key, value] : doc.items()) {
        if (!known.count(key)) {
            throw ConfigError("unknown key '" + key + "'", line_of(text, key));
        }
    }

    Reader r(text);
    ExperimentConfig cfg;
    try {
        if (doc.contains("task")) {
            const std::string task = r.string(doc, "task");
            if (task == "state-prep") {
                cfg.task = ObjectiveKind::StatePrep;
            } else if (task == "autoencoder") {
                cfg.task = ObjectiveKind::Autoencoder;
            } else {
                r.fail("task", "expected state-prep or autoencoder, got '" + task + "'");
            }
        }
        if (doc.contains("n")) {
            cfg.num_qubits = static_cast<int>(r.count(doc, "n", 2));
        }
        if (cfg.num_qubits % 2 != 0) {
            r.fail("n", "must be even");
        }
        if (doc.contains("d")) {
            cfg.depth = static_cast<int>(r.count(doc, "d", 1));
        }
        if (doc.contains("n_B")) {
            cfg.trash = static_cast<int>(r.count(doc, "n_B", 0));
        }
        if (cfg.task == ObjectiveKind::Autoencoder && (cfg.trash < 1 || cfg.trash >= cfg.num_qubits)) {
            r.fail("n_B", "autoencoder needs 1 <= n_B < n");
        }
        if (doc.contains("brick")) {
            cfg.brick = r.string(doc, "brick");
            try {
                BrickTemplate::from_name(cfg.brick);
            } catch (const std::invalid_argument &e) {
                r.fail("brick", e.what());
            }
        }
        if (doc.contains("target")) {
            const std::string t = r.string(doc, "target");
            if (t == "auto") {
                cfg.target = TargetKind::Auto;
            } else if (t == "compatible") {
                cfg.target = TargetKind::Compatible;
            } else if (t == "basis") {
                cfg.target = TargetKind::Basis;
            } else {
                r.fail("target", "expected auto, compatible or basis");
            }
        }
        if (cfg.target == TargetKind::Compatible && cfg.num_qubits > dense_limit()) {
            r.fail("target", "compatible targets need n <= " + std::to_string(dense_limit()));
        }
        if (doc.contains("backends")) {
            const json &b = doc["backends"];
            if (!b.is_array() || b.empty()) {
                r.fail("backends", "must be a non-empty list");
            }
            cfg.backends.clear();
            for (const auto &item : b) {
                if (!item.is_string()) {
                    r.fail("backends", "entries must be strings");
                }
                try {
                    cfg.backends.push_back(parse_backend(item.get<std::string>()));
                } catch (const std::invalid_argument &e) {
                    r.fail("backends", e.what());
                }
            }
        }
        for (const auto &b : cfg.backends) {
            const auto *s = std::get_if<ShotsSpec>(&b);
            if (s && s->mode == ShotMode::Shared && cfg.num_qubits > dense_limit()) {
                r.fail("backends", "shared shots need n <= " + std::to_string(dense_limit()) + "; use shots:K:per-term");
            }
        }
        if (doc.contains("optimizer")) {
            const json &o = doc["optimizer"];
            if (!o.is_object()) {
                r.fail("optimizer", "must be an object");
            }
            static const std::set<std::string> opt_keys = {"kind", "R", "s", "cap", "shadow_cap", "tol", "line_tol"};
            for (const auto &[key, value] : o.items()) {
                if (!opt_keys.count(key)) {
                    throw ConfigError("unknown optimizer key '" + key + "'", line_of(text, key));
                }
            }
            if (o.contains("kind")) {
                const std::string kind = r.string(o, "kind");
                if (kind == "spsa") {
                    cfg.optimizer.kind = OptimizerSpec::Kind::Spsa;
                } else if (kind == "powell") {
                    cfg.optimizer.kind = OptimizerSpec::Kind::Powell;
                } else {
                    r.fail("kind", "expected spsa or powell");
                }
            }
            if (o.contains("R")) {
                cfg.optimizer.iterations = r.count(o, "R", 1);
            }
            if (o.contains("s")) {
                cfg.optimizer.exponent = r.number(o, "s");
                if (!(cfg.optimizer.exponent > 0.0)) {
                    r.fail("s", "must be > 0");
                }
            }
            if (o.contains("cap")) {
                cfg.optimizer.cap = r.count(o, "cap", 0);
            }
            if (o.contains("shadow_cap")) {
                cfg.optimizer.shadow_cap = r.count(o, "shadow_cap", 0);
            }
            if (o.contains("tol")) {
                cfg.optimizer.tolerance = r.number(o, "tol");
                if (!(cfg.optimizer.tolerance >= 0.0)) {
                    r.fail("tol", "must be >= 0");
                }
            }
            if (o.contains("line_tol")) {
                cfg.optimizer.line_tolerance = r.number(o, "line_tol");
                if (!(cfg.optimizer.line_tolerance > 0.0)) {
                    r.fail("line_tol", "must be > 0");
                }
            }
        }
        if (doc.contains("instances")) {
            cfg.instances = static_cast<int>(r.count(doc, "instances", 1));
        }
        if (doc.contains("seed")) {
            cfg.seed = r.count(doc, "seed", 0);
        }
        if (doc.contains("output")) {
            cfg.output = r.string(doc, "output");
        }
        if (doc.contains("objectives")) {
            const json &o = doc["objectives"];
            if (!o.is_array()) {
                r.fail("objectives", "must be a list of numbers");
            }
            cfg.objectives.clear();
            for (const auto &v : o) {
                if (!v.is_number()) {
                    r.fail("objectives", "must be a list of numbers");
                }
                cfg.objectives.push_back(v.get<double>());
            }
        }
        if (doc.contains("bench")) {
            const json &b = doc["bench"];
            if (!b.is_object()) {
                r.fail("bench", "must be an object");
            }
            if (b.contains("n")) {
                if (!b["n"].is_array() || b["n"].empty()) {
                    r.fail("bench", "n must be a non-empty list");
                }
                cfg.bench.sizes.clear();
                for (const auto &v : b["n"]) {
                    if (!v.is_number_integer() || v.get<int>() < 2 || v.get<int>() % 2 != 0) {
                        r.fail("bench", "n entries must be even integers >= 2");
                    }
                    cfg.bench.sizes.push_back(v.get<int>());
                }
            }
            if (b.contains("repeats")) {
                cfg.bench.repeats = static_cast<int>(r.count(b, "repeats", 1));
            }
            if (b.contains("T")) {
                cfg.bench.records = r.count(b, "T", 1);
            }
        }
    } catch (const json::exception &e) {
        throw ConfigError(std::string("config: ") + e.what());
    }
    return cfg;
}

std::string config_to_json(const ExperimentConfig &cfg) {
    json backends = json::array();
    for (const auto &b : cfg.backends) {
        backends.push_back(to_string(b));
    }
    json opt;
    if (cfg.optimizer.kind == OptimizerSpec::Kind::Spsa) {
        opt = {{"kind", "spsa"}, {"R", cfg.optimizer.iterations}, {"s", cfg.optimizer.exponent}};
    } else {
        opt = {{"kind", "powell"},
               {"cap", cfg.optimizer.cap},
               {"shadow_cap", cfg.optimizer.shadow_cap},
               {"tol", cfg.optimizer.tolerance},
               {"line_tol", cfg.optimizer.line_tolerance}};
    }
    json doc = {{"task", to_string(cfg.task)},
                {"n", cfg.num_qubits},
                {"d", cfg.depth},
                {"n_B", cfg.trash},
                {"brick", cfg.brick},
                {"target", target_name(cfg.target)},
                {"backends", backends},
                {"optimizer", opt},
                {"instances", cfg.instances},
                {"seed", cfg.seed},
                {"output", cfg.output.string()},
                {"objectives", cfg.objectives},
                {"bench", {{"n", cfg.bench.sizes}, {"repeats", cfg.bench.repeats}, {"T", cfg.bench.records}}}};
    return doc.dump(2);
}

InstanceSeeds instance_seeds(uint64_t experiment_seed, int instance) {
    const uint64_t base = derive_seed(experiment_seed, static_cast<uint64_t>(instance));
    return {derive_seed(base, 1), derive_seed(base, 2), derive_seed(base, 3), derive_seed(base, 4)};
}

ProblemSpec instance_spec(const ExperimentConfig &cfg, int instance) {
    ProblemSpec spec;
    spec.task = cfg.task;
    spec.num_qubits = cfg.num_qubits;
    spec.depth = cfg.depth;
    spec.trash = cfg.task == ObjectiveKind::Autoencoder ? cfg.trash : 0;
    spec.brick = cfg.brick;
    spec.target = cfg.target;
    spec.seed = instance_seeds(cfg.seed, instance).problem;
    return spec;
}

Stat summarize(const std::vector<double> &values) {
    double sum = 0.0;
    size_t count = 0;
    for (double v : values) {
        if (!std::isnan(v)) {
            sum += v;
            ++count;
        }
    }
    if (count == 0) {
        return {};
    }
    const double mean = sum / static_cast<double>(count);
    double sq = 0.0;
    for (double v : values) {
        if (!std::isnan(v)) {
            sq += (v - mean) * (v - mean);
        }
    }
    return {mean, std::sqrt(sq / static_cast<double>(count))};
}

bool RunSummary::aborted() const {
    for (const auto &b : backends) {
        for (const auto &i : b.instances) {
            if (i.status == OptStatus::NumericalAbort) {
                return true;
            }
        }
    }
    return false;
}

std::string backend_label(const BackendSpec &spec) {
    std::string s = to_string(spec);
    std::replace(s.begin(), s.end(), ':', '-');
    return s;
}

uint64_t closed_form_copies(const BackendSpec &spec, const OptimizerSpec &opt, uint64_t terms, uint64_t evaluations) {
    if (const auto *s = std::get_if<ShotsSpec>(&spec)) {
        if (opt.kind == OptimizerSpec::Kind::Spsa) {
            return 2 * s->shots * opt.iterations * terms;
        }
        return s->shots * terms * evaluations;
    }
    if (const auto *s = std::get_if<ShadowSpec>(&spec)) {
        return s->records;
    }
    return 0;
}

InstanceResult run_instance(const ExperimentConfig &cfg, const BackendSpec &backend, int instance) {
    const auto start = std::chrono::steady_clock::now();
    const InstanceSeeds seeds = instance_seeds(cfg.seed, instance);
    const Problem problem = make_problem(instance_spec(cfg, instance));
    const AnsatzConfig &ansatz = problem.ansatz;
    auto shaped = [&](std::span<const double> x) {
        return ParamTensor(ansatz.num_qubits, ansatz.depth, ansatz.brick.num_params(),
                           std::vector<double>(x.begin(), x.end()));
    };
    Rng init(seeds.init);
    std::vector<double> theta0 = ansatz.random(init).values();

    ResourceLedger ledger;
    Estimator estimator(problem.cost, backend, Rng(seeds.backend), ledger);
    Objective objective = [&](std::span<const double> x) { return estimator.cost(shaped(x)); };
    Monitor monitor;
    monitor.exact = [&](std::span<const double> x) { return 1.0 - eval_exact(problem.cost, shaped(x)); };
    if (problem.has_infidelity()) {
        monitor.infidelity = [&](std::span<const double> x) { return problem.infidelity(shaped(x)); };
    }
    monitor.copies = [&] { return ledger.copies; };

    OptResult opt;
    if (cfg.optimizer.kind == OptimizerSpec::Kind::Spsa) {
        SpsaConfig sc;
        sc.iterations = cfg.optimizer.iterations;
        sc.exponent = cfg.optimizer.exponent;
        sc.seed = seeds.optimizer;
        opt = spsa_minimize(objective, std::move(theta0), sc, monitor);
    } else {
        PowellConfig pc;
        pc.max_evaluations = std::holds_alternative<ShadowSpec>(backend) ? cfg.optimizer.shadow_cap : cfg.optimizer.cap;
        pc.tolerance = cfg.optimizer.tolerance;
        pc.line_tolerance = cfg.optimizer.line_tolerance;
        opt = powell_minimize(objective, std::move(theta0), pc, monitor);
    }

    InstanceResult res;
    res.instance = instance;
    res.seed = seeds.problem;
    res.best_exact_cost = min_column(opt.trace, &TraceRow::exact_value);
    res.final_exact_cost = opt.trace.rows.empty() ? kNotLogged : opt.trace.rows.back().exact_value;
    res.best_infidelity = min_column(opt.trace, &TraceRow::infidelity);
    res.final_infidelity = opt.trace.rows.empty() ? kNotLogged : opt.trace.rows.back().infidelity;
    res.copies = ledger.copies;
    res.evaluations = ledger.evaluations;
    res.closed_form_copies = closed_form_copies(backend, cfg.optimizer, problem.cost.num_terms(), ledger.evaluations);
    res.status = opt.status;
    res.message = opt.message;
    res.trace = std::move(opt.trace);
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return res;
}

Band band(const std::vector<InstanceResult> &instances, const std::string &column) {
    double TraceRow::*field = nullptr;
    if (column == "exact") {
        field = &TraceRow::exact_value;
    } else if (column == "infidelity") {
        field = &TraceRow::infidelity;
    } else {
        throw std::invalid_argument("band: unknown column '" + column + "'");
    }
    std::set<uint64_t> iters;
    for (const auto &inst : instances) {
        for (const auto &row : inst.trace.rows) {
            iters.insert(row.iter);
        }
    }
    Band out;
    std::vector<size_t> cursor(instances.size(), 0);
    for (uint64_t it : iters) {
        std::vector<double> values;
        for (size_t i = 0; i < instances.size(); ++i) {
            const auto &rows = instances[i].trace.rows;
            while (cursor[i] + 1 < rows.size() && rows[cursor[i] + 1].iter <= it) {
                ++cursor[i];
            }
            if (!rows.empty() && rows[cursor[i]].iter <= it) {
                values.push_back(rows[cursor[i]].*field);
            }
        }
        const Stat s = summarize(values);
        out.iters.push_back(it);
        out.mean.push_back(s.mean);
        out.upper.push_back(s.mean + s.std);
        out.lower.push_back(s.mean - s.std);
    }
    return out;
}

std::string summary_to_json(const RunSummary &summary) {
    json backends = json::array();
    for (const auto &b : summary.backends) {
        json instances = json::array();
        for (const auto &i : b.instances) {
            instances.push_back({{"instance", i.instance},
                                 {"seed", i.seed},
                                 {"best_exact_cost", number_or_null(i.best_exact_cost)},
                                 {"final_exact_cost", number_or_null(i.final_exact_cost)},
                                 {"best_infidelity", number_or_null(i.best_infidelity)},
                                 {"final_infidelity", number_or_null(i.final_infidelity)},
                                 {"copies", i.copies},
                                 {"closed_form_copies", i.closed_form_copies},
                                 {"evaluations", i.evaluations},
                                 {"status", to_string(i.status)},
                                 {"message", i.message},
                                 {"trace", "instance_" + std::to_string(i.instance) + ".csv"}});
        }
        backends.push_back({{"backend", to_string(b.backend)},
                            {"label", backend_label(b.backend)},
                            {"copies_infinite", std::holds_alternative<ExactSpec>(b.backend)},
                            {"instances", instances},
                            {"aggregate",
                             {{"best_exact_cost", stat_json(b.best_exact_cost)},
                              {"final_exact_cost", stat_json(b.final_exact_cost)},
                              {"best_infidelity", stat_json(b.best_infidelity)},
                              {"final_infidelity", stat_json(b.final_infidelity)},
                              {"copies", stat_json(b.copies)}}}});
    }
    json doc = {{"config", json::parse(config_to_json(summary.config))}, {"backends", backends}};
    return doc.dump(2) + "\n";
}

RunSummary run_experiment(const ExperimentConfig &cfg, bool write_files) {
    const size_t nb = cfg.backends.size();
    const size_t ni = static_cast<size_t>(cfg.instances);
    std::vector<InstanceResult> results(nb * ni);
    parallel_for(results.size(), [&](size_t k) {
        results[k] = run_instance(cfg, cfg.backends[k / ni], static_cast<int>(k % ni));
    });

    RunSummary summary;
    summary.config = cfg;
    for (size_t b = 0; b < nb; ++b) {
        BackendResult br;
        br.backend = cfg.backends[b];
        std::vector<double> best, fin, best_inf, fin_inf, copies;
        for (size_t i = 0; i < ni; ++i) {
            InstanceResult &r = results[b * ni + i];
            best.push_back(r.best_exact_cost);
            fin.push_back(r.final_exact_cost);
            best_inf.push_back(r.best_infidelity);
            fin_inf.push_back(r.final_infidelity);
            copies.push_back(static_cast<double>(r.copies));
            br.instances.push_back(std::move(r));
        }
        br.best_exact_cost = summarize(best);
        br.final_exact_cost = summarize(fin);
        br.best_infidelity = summarize(best_inf);
        br.final_infidelity = summarize(fin_inf);
        br.copies = summarize(copies);
        summary.backends.push_back(std::move(br));
    }

    if (write_files) {
        std::filesystem::create_directories(cfg.output);
        json timing = json::array();
        for (const auto &br : summary.backends) {
            const auto dir = cfg.output / backend_label(br.backend);
            std::filesystem::create_directories(dir);
            for (const auto &inst : br.instances) {
                std::ofstream out(dir / ("instance_" + std::to_string(inst.instance) + ".csv"));
                write_trace_csv(out, inst.trace);
                timing.push_back(
                    {{"backend", to_string(br.backend)}, {"instance", inst.instance}, {"wall_ms", inst.wall_ms}});
            }
            const Band exact = band(br.instances, "exact");
            const Band inf = band(br.instances, "infidelity");
            std::ofstream out(dir / "band.csv");
            out.precision(17);
            out << "iter,instances,mean,upper,lower,infidelity_mean,infidelity_upper,infidelity_lower\n";
            auto cell = [&](double v) -> std::ostream & { return std::isnan(v) ? out << "nan" : out << v; };
            for (size_t k = 0; k < exact.iters.size(); ++k) {
                out << exact.iters[k] << ',' << br.instances.size() << ',';
                cell(exact.mean[k]) << ',';
                cell(exact.upper[k]) << ',';
                cell(exact.lower[k]) << ',';
                cell(inf.mean[k]) << ',';
                cell(inf.upper[k]) << ',';
                cell(inf.lower[k]) << '\n';
            }
        }
        write_text(cfg.output / "summary.json", summary_to_json(summary));
        write_text(cfg.output / "timing.json", json{{"runs", timing}}.dump(2) + "\n");
    }
    return summary;
}

std::vector<Crossing> crossings(const RunSummary &summary) {
    std::vector<Crossing> out;
    for (const auto &br : summary.backends) {
        for (double objective : summary.config.objectives) {
            Crossing c;
            c.backend = to_string(br.backend);
            c.objective = objective;
            c.instances = static_cast<int>(br.instances.size());
            c.infinite = std::holds_alternative<ExactSpec>(br.backend);
            double sum = 0.0;
            for (const auto &inst : br.instances) {
                double running = std::numeric_limits<double>::infinity();
                for (const auto &row : inst.trace.rows) {
                    if (!std::isnan(row.exact_value)) {
                        running = std::min(running, row.exact_value);
                    }
                    if (running <= objective) {
                        sum += static_cast<double>(row.copies);
                        c.reached++;
                        break;
                    }
                }
            }
            if (c.reached > 0) {
                c.copies = c.infinite ? std::numeric_limits<double>::infinity() : sum / c.reached;
            }
            out.push_back(c);
        }
    }
    return out;
}

std::vector<Crossing> run_sweep(const ExperimentConfig &cfg) {
    const RunSummary summary = run_experiment(cfg, true);
    std::vector<Crossing> rows = crossings(summary);
    std::ofstream out(cfg.output / "sweep.csv");
    out.precision(17);
    out << "backend,objective,copies,reached,instances\n";
    for (const auto &c : rows) {
        out << c.backend << ',' << c.objective << ',';
        if (c.reached == 0) {
            out << "";
        } else if (c.infinite) {
            out << "inf";
        } else {
            out << c.copies;
        }
        out << ',' << c.reached << ',' << c.instances << '\n';
    }
    return rows;
}

std::vector<BenchRow> run_bench(const ExperimentConfig &cfg, bool write_files) {
    std::vector<BenchRow> rows;
    for (int n : cfg.bench.sizes) {
        if (n < 2 || n % 2 != 0) {
            throw std::invalid_argument("bench: n must be even and >= 2");
        }
        const int d = std::max(1, static_cast<int>(std::floor(std::log2(n))));
        ProblemSpec spec;
        spec.task = ObjectiveKind::StatePrep;
        spec.num_qubits = n;
        spec.depth = d;
        spec.brick = cfg.brick;
        spec.target = TargetKind::Basis;
        spec.seed = derive_seed(cfg.seed, static_cast<uint64_t>(n));
        const Problem problem = make_problem(spec);
        Rng rng(derive_seed(spec.seed, 7));
        const ShadowSet set = sample_shadows(problem.cost.input(), cfg.bench.records, rng);
        const ReducedShadowCache cache = prepare_shadows(problem.cost, set);
        const ParamTensor theta = problem.ansatz.random(rng);
        double sink = 0.0;
        const auto start = std::chrono::steady_clock::now();
        for (int r = 0; r < cfg.bench.repeats; ++r) {
            sink += eval_shadow(problem.cost, theta, cache);
        }
        const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count() /
                               cfg.bench.repeats;
        if (!std::isfinite(sink)) {
            throw NumericalError("bench: non-finite estimate");
        }
        rows.push_back({n, d, seconds});
    }
    if (write_files) {
        std::filesystem::create_directories(cfg.output);
        std::ofstream out(cfg.output / "bench.csv");
        out.precision(17);
        out << "n,d,seconds\n";
        for (const auto &r : rows) {
            out << r.num_qubits << ',' << r.depth << ',' << r.seconds << '\n';
        }
    }
    return rows;
}

}  // namespace also
