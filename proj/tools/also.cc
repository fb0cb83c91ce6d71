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

// also: experiment runner and shadow-file utility.
//
//   also run     --preset sp8 [--set optimizer.R=100] [--output DIR]
//   also sweep   --config cfg.json
//   also bench   --preset sp30 --set 'bench.n=[8,16,30]'
//   also shadows sample  --preset sp8 --instance 0 --records 100000 --out s.bin
//   also shadows inspect s.bin --support 0,1
//
// Exit status: 0 success, 2 configuration error, 3 numerical abort, 1 other failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "also/errors.h"
#include "also/experiment.h"
#include "also/shadow_io.h"
#include "json.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

struct ConfigFlags {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
    std::string output;
    int instances = 0;
    long long seed = -1;
};

void add_config_flags(CLI::App *cmd, ConfigFlags &flags) {
    cmd->add_option("-c,--config", flags.config_path, "JSON experiment config");
    cmd->add_option("-p,--preset", flags.preset, "Preset: sp8, sp30, ae8, ae30");
    cmd->add_option("-s,--set", flags.overrides, "Override key=value (dotted keys reach into optimizer/bench)");
    cmd->add_option("-o,--output", flags.output, "Output directory");
    cmd->add_option("--instances", flags.instances, "Number of problem instances");
    cmd->add_option("--seed", flags.seed, "Experiment seed");
}

also::ExperimentConfig load_config(const ConfigFlags &flags) {
    std::string text = "{}";
    if (!flags.config_path.empty()) {
        std::ifstream in(flags.config_path);
        if (!in) {
            throw also::ConfigError("cannot read config file " + flags.config_path);
        }
        std::stringstream ss;
        ss << in.rdbuf();
        text = ss.str();
    }
    std::vector<std::string> overrides;
    if (!flags.preset.empty()) {
        if (!flags.config_path.empty()) {
            throw also::ConfigError("--config and --preset are mutually exclusive; put \"preset\" in the file");
        }
        text = nlohmann::json{{"preset", flags.preset}}.dump();
    }
    overrides = flags.overrides;
    if (!flags.output.empty()) {
        overrides.push_back("output=" + nlohmann::json(flags.output).dump());
    }
    if (flags.instances > 0) {
        overrides.push_back("instances=" + std::to_string(flags.instances));
    }
    if (flags.seed >= 0) {
        overrides.push_back("seed=" + std::to_string(flags.seed));
    }
    return also::parse_config(text, overrides);
}

void print_summary(const also::RunSummary &summary) {
    std::printf("%-22s %14s %14s %14s %14s\n", "backend", "best_cost", "std", "best_infid", "copies");
    for (const auto &b : summary.backends) {
        std::printf("%-22s %14.6g %14.6g %14.6g %14.6g\n", also::to_string(b.backend).c_str(), b.best_exact_cost.mean,
                    b.best_exact_cost.std, b.best_infidelity.mean, b.copies.mean);
    }
}

std::vector<int> parse_support(const std::string &text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        out.push_back(std::stoi(item));
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Alternating layered shadow optimization: experiments and shadow files"};
    app.require_subcommand(1);

    ConfigFlags run_flags, sweep_flags, bench_flags, sample_flags;
    auto *run = app.add_subcommand("run", "Optimize every instance with every configured backend");
    add_config_flags(run, run_flags);
    bool print_config = false;
    run->add_flag("--print-config", print_config, "Print the resolved config and exit");

    auto *sweep = app.add_subcommand("sweep", "Run, then report copies needed to reach each objective");
    add_config_flags(sweep, sweep_flags);

    auto *bench = app.add_subcommand("bench", "Time one shadow evaluation with d = floor(log2 n)");
    add_config_flags(bench, bench_flags);

    auto *shadows = app.add_subcommand("shadows", "Create or inspect shadow files");
    shadows->require_subcommand(1);
    auto *sample = shadows->add_subcommand("sample", "Sample shadows of one instance's input state");
    add_config_flags(sample, sample_flags);
    int sample_instance = 0;
    unsigned long long sample_records = 0;
    std::string sample_out;
    bool sample_json = false;
    sample->add_option("--instance", sample_instance, "Instance index")->check(CLI::NonNegativeNumber);
    sample->add_option("-T,--records", sample_records, "Number of shadow records")->required();
    sample->add_option("--out", sample_out, "Output file")->required();
    sample->add_flag("--json", sample_json, "Write the JSON export instead of the binary format");

    auto *inspect = shadows->add_subcommand("inspect", "Print a shadow file's header and records");
    std::string inspect_path;
    size_t inspect_records = 5;
    std::string inspect_support;
    inspect->add_option("file", inspect_path, "Shadow file")->required();
    inspect->add_option("--records", inspect_records, "Records to print");
    inspect->add_option("--support", inspect_support, "Comma-separated qubits: print the reduced shadow state");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitConfig;
    }

    try {
        if (*run) {
            const auto cfg = load_config(run_flags);
            if (print_config) {
                std::cout << also::config_to_json(cfg) << "\n";
                return 0;
            }
            const auto summary = also::run_experiment(cfg);
            print_summary(summary);
            std::printf("wrote %s\n", (cfg.output / "summary.json").c_str());
            return summary.aborted() ? kExitNumerical : 0;
        }
        if (*sweep) {
            const auto cfg = load_config(sweep_flags);
            for (const auto &c : also::run_sweep(cfg)) {
                std::printf("%-22s objective %-8g copies %-14g reached %d/%d\n", c.backend.c_str(), c.objective,
                            c.copies, c.reached, c.instances);
            }
            std::printf("wrote %s\n", (cfg.output / "sweep.csv").c_str());
            return 0;
        }
        if (*bench) {
            const auto cfg = load_config(bench_flags);
            for (const auto &row : also::run_bench(cfg)) {
                std::printf("n=%-4d d=%-3d %.6f s\n", row.num_qubits, row.depth, row.seconds);
            }
            std::printf("wrote %s\n", (cfg.output / "bench.csv").c_str());
            return 0;
        }
        if (*sample) {
            const auto cfg = load_config(sample_flags);
            if (sample_instance >= cfg.instances) {
                throw also::ConfigError("--instance must be below the configured instance count");
            }
            const auto problem = also::make_problem(also::instance_spec(cfg, sample_instance));
            also::Rng rng(also::instance_seeds(cfg.seed, sample_instance).backend);
            const auto set = also::sample_shadows(problem.cost.input(), sample_records, rng);
            if (sample_json) {
                std::ofstream out(sample_out);
                out << also::shadows_to_json(set) << "\n";
            } else {
                also::write_shadows(std::filesystem::path(sample_out), set);
            }
            std::printf("wrote %llu records over %d qubits to %s\n", sample_records, set.num_qubits(),
                        sample_out.c_str());
            return 0;
        }
        if (*inspect) {
            const auto set = also::read_shadows(std::filesystem::path(inspect_path));
            std::cout << also::shadows_to_json(set, inspect_records) << "\n";
            if (!inspect_support.empty()) {
                const auto support = parse_support(inspect_support);
                const auto reduced = also::reduce(set, support);
                std::cout << "reduced shadow state on {" << inspect_support << "}:\n" << reduced.matrix << "\n";
            }
            return 0;
        }
    } catch (const also::ConfigError &e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const also::NumericalError &e) {
        std::fprintf(stderr, "numerical abort: %s\n", e.what());
        return kExitNumerical;
    } catch (const std::exception &e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
