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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "also/errors.h"
#include "json.hpp"

namespace also {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string slurp(const fs::path &p) {
    std::ifstream in(p);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string &name) {
    const fs::path p = fs::temp_directory_path() / ("also_experiment_test_" + name);
    fs::remove_all(p);
    return p;
}

ExperimentConfig tiny(const std::string &backends, const std::string &name) {
    std::string text = R"({"task": "state-prep", "n": 4, "d": 1, "backends": )" + backends +
                       R"(, "optimizer": {"kind": "spsa", "R": 20, "s": 0.5}, "instances": 3, "seed": 11})";
    ExperimentConfig cfg = parse_config(text);
    cfg.output = scratch(name);
    return cfg;
}

int error_line(const std::string &text, const std::vector<std::string> &overrides = {}) {
    try {
        parse_config(text, overrides);
    } catch (const ConfigError &e) {
        return e.line();
    }
    return -1;
}

TEST(Config, Defaults) {
    const ExperimentConfig cfg = parse_config("{}");
    EXPECT_EQ(cfg.instances, 5);
    EXPECT_EQ(cfg.backends.size(), 1u);
    EXPECT_EQ(cfg.optimizer.cap, 50000u);
}

TEST(Config, ErrorsCarryLineNumbers) {
    EXPECT_EQ(error_line("{\n  \"n\": 4,\n  \"bogus\": 1\n}"), 3);
    EXPECT_EQ(error_line("{\n  \"n\": 5\n}"), 2);
    EXPECT_EQ(error_line("{\n\n  \"backends\": [\"shots:zero\"]\n}"), 3);
    EXPECT_EQ(error_line("{\n \"task\": \"autoencoder\",\n \"n\": 4,\n \"n_B\": 4\n}"), 4);
    EXPECT_EQ(error_line("{\n \"optimizer\": {\n   \"kind\": \"spsa\",\n   \"eta\": 2}\n}"), 4);
    // The parser reports where it gave up: the closing brace.
    EXPECT_EQ(error_line("{\n \"n\": 4,\n \"d\": \n}"), 4);
    EXPECT_GT(error_line("{\"instances\": 0}"), 0);
    EXPECT_GT(error_line("[1, 2]"), 0);
    EXPECT_THROW(parse_config("{\"preset\": \"sp9\"}"), ConfigError);
}

TEST(Config, PresetsParse) {
    const auto names = preset_names();
    EXPECT_EQ(std::set<std::string>(names.begin(), names.end()), (std::set<std::string>{"sp8", "sp30", "ae8", "ae30"}));
    for (const auto &n : names) {
        EXPECT_NO_THROW(parse_config(preset_config(n))) << n;
    }
    const auto sp8 = parse_config(R"({"preset": "sp8"})");
    EXPECT_EQ(sp8.optimizer.iterations, 3000u);
    EXPECT_EQ(sp8.backends.size(), 4u);
    const auto ae8 = parse_config(R"({"preset": "ae8", "instances": 2})");
    EXPECT_EQ(ae8.task, ObjectiveKind::Autoencoder);
    EXPECT_EQ(ae8.trash, 4);
    EXPECT_DOUBLE_EQ(ae8.optimizer.exponent, 0.3);
    EXPECT_EQ(ae8.instances, 2);
}

TEST(Config, Overrides) {
    const auto cfg = parse_config(R"({"preset": "sp8"})", {"optimizer.R=50", "backends=[\"shadow:1e3\"]", "n=6",
                                                             "output=/tmp/x"});
    EXPECT_EQ(cfg.optimizer.iterations, 50u);
    EXPECT_EQ(cfg.num_qubits, 6);
    EXPECT_EQ(cfg.output, fs::path("/tmp/x"));
    ASSERT_EQ(cfg.backends.size(), 1u);
    EXPECT_EQ(cfg.backends[0], BackendSpec(ShadowSpec{1000}));
    EXPECT_THROW(parse_config("{}", {"nonsense"}), ConfigError);
    EXPECT_THROW(parse_config("{}", {"optimizer.bogus=1"}), ConfigError);
}

TEST(Config, JsonRoundTrip) {
    const auto cfg = parse_config(R"({"preset": "ae30"})");
    const std::string text = config_to_json(cfg);
    EXPECT_EQ(config_to_json(parse_config(text)), text);
}

TEST(Seeds, DistinctAndStable) {
    std::set<uint64_t> seen;
    for (int i = 0; i < 10; ++i) {
        const auto s = instance_seeds(42, i);
        for (uint64_t v : {s.problem, s.init, s.optimizer, s.backend}) {
            EXPECT_TRUE(seen.insert(v).second);
        }
        EXPECT_EQ(instance_seeds(42, i).init, s.init);
    }
}

TEST(Stats, PopulationStdSkipsNan) {
    const Stat s = summarize({1.0, 3.0, kNotLogged});
    EXPECT_DOUBLE_EQ(s.mean, 2.0);
    EXPECT_DOUBLE_EQ(s.std, 1.0);
    EXPECT_TRUE(std::isnan(summarize({kNotLogged}).mean));
}

TEST(Ledger, ClosedFormCopies) {
    auto cfg = tiny(R"(["exact", "shots:10", "shadow:2000"])", "ledger");
    const auto summary = run_experiment(cfg, false);
    ASSERT_EQ(summary.backends.size(), 3u);
    for (const auto &inst : summary.backends[0].instances) {
        EXPECT_EQ(inst.copies, 0u);
    }
    for (const auto &inst : summary.backends[1].instances) {
        EXPECT_EQ(inst.copies, 2u * 10 * 20 * 4);
        EXPECT_EQ(inst.copies, inst.closed_form_copies);
        EXPECT_EQ(inst.evaluations, 40u);
    }
    for (const auto &inst : summary.backends[2].instances) {
        EXPECT_EQ(inst.copies, 2000u);
        EXPECT_EQ(inst.closed_form_copies, 2000u);
        uint64_t prev = 0;
        for (const auto &row : inst.trace.rows) {
            EXPECT_EQ(row.copies, 2000u);
            EXPECT_GE(row.copies, prev);
            prev = row.copies;
        }
    }
}

TEST(Ledger, AutoencoderAndPowell) {
    ExperimentConfig cfg = parse_config(
        R"({"task": "autoencoder", "n": 4, "n_B": 2, "d": 1, "backends": ["shots:7"],
            "optimizer": {"kind": "spsa", "R": 15, "s": 0.3}, "instances": 2, "seed": 3})");
    for (const auto &inst : run_experiment(cfg, false).backends[0].instances) {
        EXPECT_EQ(inst.copies, 2u * 7 * 15 * 2);
    }
    cfg.optimizer.kind = OptimizerSpec::Kind::Powell;
    cfg.optimizer.cap = 60;
    for (const auto &inst : run_experiment(cfg, false).backends[0].instances) {
        EXPECT_LE(inst.evaluations, 60u);
        EXPECT_EQ(inst.copies, 7 * 2 * inst.evaluations);
        EXPECT_EQ(inst.copies, inst.closed_form_copies);
    }
}

TEST(Outputs, FilesAndAggregates) {
    const auto cfg = tiny(R"(["exact", "shadow:3000"])", "outputs");
    run_experiment(cfg, true);
    const json summary = json::parse(slurp(cfg.output / "summary.json"));
    ASSERT_TRUE(fs::exists(cfg.output / "timing.json"));
    EXPECT_EQ(summary["backends"][0]["copies_infinite"], true);
    for (const auto &b : summary["backends"]) {
        const fs::path dir = cfg.output / b["label"].get<std::string>();
        std::vector<double> bests;
        std::vector<OptTrace> traces;
        for (const auto &inst : b["instances"]) {
            std::ifstream in(dir / inst["trace"].get<std::string>());
            traces.push_back(read_trace_csv(in));
            double best = INFINITY;
            for (const auto &row : traces.back().rows) {
                best = std::min(best, row.exact_value);
            }
            EXPECT_NEAR(best, inst["best_exact_cost"].get<double>(), 1e-12);
            EXPECT_NEAR(traces.back().rows.back().exact_value, inst["final_exact_cost"].get<double>(), 1e-12);
            bests.push_back(best);
        }
        const Stat s = summarize(bests);
        EXPECT_NEAR(s.mean, b["aggregate"]["best_exact_cost"]["mean"].get<double>(), 1e-12);
        EXPECT_NEAR(s.std, b["aggregate"]["best_exact_cost"]["std"].get<double>(), 1e-12);

        std::ifstream band_in(dir / "band.csv");
        std::string line;
        std::getline(band_in, line);
        EXPECT_EQ(line, "iter,instances,mean,upper,lower,infidelity_mean,infidelity_upper,infidelity_lower");
        size_t k = 0;
        while (std::getline(band_in, line)) {
            std::vector<double> cells;
            std::stringstream ls(line);
            std::string c;
            while (std::getline(ls, c, ',')) {
                cells.push_back(std::stod(c));
            }
            ASSERT_EQ(cells.size(), 8u);
            EXPECT_LE(cells[4], cells[2] + 1e-15);
            EXPECT_LE(cells[2], cells[3] + 1e-15);
            // All instances log the same iterations here.
            std::vector<double> col;
            for (const auto &t : traces) {
                col.push_back(t.rows[k].exact_value);
            }
            EXPECT_NEAR(cells[2], summarize(col).mean, 1e-12);
            ++k;
        }
        EXPECT_EQ(k, traces[0].rows.size());
    }
}

TEST(Outputs, Reproducible) {
    const auto cfg = tiny(R"(["exact", "shots:5", "shadow:1000"])", "repro");
    run_experiment(cfg, true);
    const std::string first = slurp(cfg.output / "summary.json");
    const std::string trace = slurp(cfg.output / "shots-5" / "instance_1.csv");
    run_experiment(cfg, true);
    EXPECT_EQ(slurp(cfg.output / "summary.json"), first);
    // Traces carry wall-clock time, so compare everything else.
    std::stringstream a(trace), b(slurp(cfg.output / "shots-5" / "instance_1.csv"));
    const auto ta = read_trace_csv(a), tb = read_trace_csv(b);
    ASSERT_EQ(ta.rows.size(), tb.rows.size());
    for (size_t i = 0; i < ta.rows.size(); ++i) {
        EXPECT_EQ(ta.rows[i].exact_value, tb.rows[i].exact_value);
        EXPECT_EQ(ta.rows[i].copies, tb.rows[i].copies);
    }
}

TEST(Sweep, CrossingsCsv) {
    auto cfg = tiny(R"(["exact", "shots:5"])", "sweep");
    cfg.objectives = {0.9, 1e-9};
    const auto rows = run_sweep(cfg);
    ASSERT_EQ(rows.size(), 4u);
    std::ifstream in(cfg.output / "sweep.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "backend,objective,copies,reached,instances");
    std::vector<std::string> lines;
    while (std::getline(in, line)) {
        lines.push_back(line);
    }
    ASSERT_EQ(lines.size(), 4u);
    // Cost 0.9 is met at the start by every instance.
    EXPECT_EQ(lines[0], "exact,0.90000000000000002,inf,3,3");
    EXPECT_EQ(rows[2].reached, 3);
    EXPECT_EQ(rows[2].copies, 0.0);
    EXPECT_EQ(rows[3].reached, 0);
    EXPECT_NE(lines[3].find(",,0,3"), std::string::npos) << lines[3];
}

TEST(Bench, Rows) {
    ExperimentConfig cfg = parse_config(R"({"bench": {"n": [4, 8], "repeats": 1, "T": 200}})");
    cfg.output = scratch("bench");
    const auto rows = run_bench(cfg, true);
    ASSERT_EQ(rows.size(), 2u);
    EXPECT_EQ(rows[0].depth, 2);
    EXPECT_EQ(rows[1].depth, 3);
    EXPECT_GT(rows[1].seconds, 0.0);
    std::ifstream in(cfg.output / "bench.csv");
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, "n,d,seconds");
}

TEST(Labels, BackendLabel) {
    EXPECT_EQ(backend_label(parse_backend("shadow:5e5")), "shadow-500000");
    EXPECT_EQ(backend_label(parse_backend("exact")), "exact");
}

}  // namespace
}  // namespace also
