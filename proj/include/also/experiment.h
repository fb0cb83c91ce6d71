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

#ifndef ALSO_EXPERIMENT_H
#define ALSO_EXPERIMENT_H

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "also/estimator.h"
#include "also/optimizer.h"
#include "also/tasks.h"

namespace also {

struct OptimizerSpec {
    enum class Kind { Spsa, Powell };
    Kind kind = Kind::Spsa;
    // SPSA
    uint64_t iterations = 3000;
    double exponent = 0.5;
    // Powell; the cap applies to exact and shots backends, shadow_cap to shadow ones (0 = unlimited).
    uint64_t cap = 50000;
    uint64_t shadow_cap = 0;
    double tolerance = 1e-10;
    double line_tolerance = 1e-4;
};

struct BenchSpec {
    std::vector<int> sizes = {4, 8, 12, 16, 20, 24, 28, 30};
    int repeats = 3;
    uint64_t records = 1000;
};

struct ExperimentConfig {
    ObjectiveKind task = ObjectiveKind::StatePrep;
    int num_qubits = 8;
    int depth = 2;
    int trash = 0;
    std::string brick = "ry-cnot-ry";
    TargetKind target = TargetKind::Auto;
    std::vector<BackendSpec> backends = {ExactSpec{}};
    OptimizerSpec optimizer;
    int instances = 5;
    uint64_t seed = 0;
    std::filesystem::path output = "also-out";
    /// Target cost levels for `sweep`.
    std::vector<double> objectives = {0.2, 0.1, 0.05, 0.02, 0.01};
    BenchSpec bench;
};

/// Names accepted by `preset_config`: sp8, sp30, ae8, ae30.
std::vector<std::string> preset_names();
/// JSON text of a preset; throws ConfigError for an unknown name.
std::string preset_config(const std::string &name);

/// Parses a JSON config. A "preset" key seeds the defaults, then the file's own
/// keys, then `overrides` ("key=value" or "optimizer.key=value", value as JSON
/// or a bare string) are applied. Errors carry the 1-based line of the
/// offending key where it can be located. Throws ConfigError.
ExperimentConfig parse_config(const std::string &text, const std::vector<std::string> &overrides = {});

/// Canonical JSON form (also embedded in the summary).
std::string config_to_json(const ExperimentConfig &cfg);

ProblemSpec instance_spec(const ExperimentConfig &cfg, int instance);

/// Per-purpose seeds of one instance.
struct InstanceSeeds {
    uint64_t problem;
    uint64_t init;
    uint64_t optimizer;
    uint64_t backend;
};
InstanceSeeds instance_seeds(uint64_t experiment_seed, int instance);

struct InstanceResult {
    int instance = 0;
    uint64_t seed = 0;
    double best_exact_cost = 0.0;
    double final_exact_cost = 0.0;
    /// NaN when true infidelity is unavailable.
    double best_infidelity = kNotLogged;
    double final_infidelity = kNotLogged;
    uint64_t copies = 0;
    uint64_t closed_form_copies = 0;
    uint64_t evaluations = 0;
    OptStatus status = OptStatus::Completed;
    std::string message;
    double wall_ms = 0.0;
    OptTrace trace;
};

struct Stat {
    double mean = kNotLogged;
    double std = kNotLogged;
};

/// Mean and population standard deviation; NaN inputs are skipped.
Stat summarize(const std::vector<double> &values);

struct BackendResult {
    BackendSpec backend;
    std::vector<InstanceResult> instances;
    Stat best_exact_cost;
    Stat final_exact_cost;
    Stat best_infidelity;
    Stat final_infidelity;
    Stat copies;
};

struct RunSummary {
    ExperimentConfig config;
    std::vector<BackendResult> backends;

    bool aborted() const;
};

/// File-system friendly backend name: exact, shots-K, shots-K-per-term, shadow-T.
std::string backend_label(const BackendSpec &spec);

/// Copies the closed-form accounting predicts for one finished run: 2KRM (SPSA) or
/// K*M*evaluations (Powell) for shots, T for shadows, 0 for exact.
uint64_t closed_form_copies(const BackendSpec &spec, const OptimizerSpec &opt, uint64_t terms, uint64_t evaluations);

/// Runs one backend on one instance.
InstanceResult run_instance(const ExperimentConfig &cfg, const BackendSpec &backend, int instance);

/// Runs every (backend, instance) pair on a worker pool. When `write_files`,
/// writes under cfg.output:
///   <label>/instance_<i>.csv   trace
///   <label>/band.csv           iter, n, mean, upper, lower (+ infidelity)
///   summary.json               per-instance rows and aggregates, no timings
///   timing.json                wall-clock per run
RunSummary run_experiment(const ExperimentConfig &cfg, bool write_files = true);

std::string summary_to_json(const RunSummary &summary);

struct Band {
    std::vector<uint64_t> iters;
    std::vector<double> mean;
    std::vector<double> upper;
    std::vector<double> lower;
};

/// Mean +- std of `column` ("exact" or "infidelity") across instances at each
/// logged iteration; an instance that stopped early contributes its last value.
Band band(const std::vector<InstanceResult> &instances, const std::string &column);

struct Crossing {
    std::string backend;
    double objective;
    /// Mean ledger value at the first crossing over instances that crossed.
    double copies = kNotLogged;
    int reached = 0;
    int instances = 0;
    bool infinite = false;
};

/// First ledger value at which each instance's running-best exact cost falls
/// to or below each objective.
std::vector<Crossing> crossings(const RunSummary &summary);

/// Runs the experiment and writes sweep.csv (backend, objective, copies,
/// reached, instances) next to the run outputs.
std::vector<Crossing> run_sweep(const ExperimentConfig &cfg);

struct BenchRow {
    int num_qubits;
    int depth;
    double seconds;
};

/// Mean wall time of one eval_shadow for the state-preparation J with
/// d = floor(log2 n) on a basis-state target. Writes bench.csv when asked.
std::vector<BenchRow> run_bench(const ExperimentConfig &cfg, bool write_files = true);

}  // namespace also

#endif
