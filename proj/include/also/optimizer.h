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

#ifndef ALSO_OPTIMIZER_H
#define ALSO_OPTIMIZER_H

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace also {

/// Cost to minimize. May throw NumericalError.
using Objective = std::function<double(std::span<const double>)>;

/// Read-only hooks used when a trace row is logged. None of them may consume
/// copies; `exact` and `infidelity` are optional.
struct Monitor {
    std::function<double(std::span<const double>)> exact;
    std::function<double(std::span<const double>)> infidelity;
    std::function<uint64_t()> copies;
};

inline constexpr double kNotLogged = std::numeric_limits<double>::quiet_NaN();

struct TraceRow {
    uint64_t iter = 0;
    double backend_value = kNotLogged;
    double exact_value = kNotLogged;
    uint64_t copies = 0;
    double wall_ms = 0.0;
    double infidelity = kNotLogged;
    double gain_a = kNotLogged;
    double gain_c = kNotLogged;
};

struct OptTrace {
    std::vector<TraceRow> rows;

    /// Index of the row with the smallest exact value; rows.size() if none is logged.
    size_t best_exact_row() const;
};

/// Columns: iter, backend_value, exact_value, copies, wall_ms, infidelity,
/// gain_a, gain_c. Values not logged are written as "nan".
void write_trace_csv(std::ostream &out, const OptTrace &trace);
/// Throws std::runtime_error naming the offending line.
OptTrace read_trace_csv(std::istream &in);

enum class OptStatus { Completed, Converged, CapExhausted, NumericalAbort };

const char *to_string(OptStatus status);

struct OptResult {
    std::vector<double> theta;
    OptTrace trace;
    OptStatus status = OptStatus::Completed;
    uint64_t evaluations = 0;
    std::string message;
};

/// Every iteration up to 3000 iterations, every 1000th beyond.
uint64_t default_log_every(uint64_t iterations);

struct SpsaConfig {
    uint64_t iterations = 1;
    double exponent = 0.5;
    uint64_t seed = 0;
    /// 0 selects default_log_every(iterations).
    uint64_t log_every = 0;
};

/// theta_{r+1} = theta_r - a_r g_r with a_r = c_r = r^-s (r from 1) and
/// g_r = [f(theta + c Delta) - f(theta - c Delta)] / (2 c) * Delta, Delta
/// Rademacher. Two objective calls per iteration. Returns the logged iterate
/// with the smallest exact value when `monitor.exact` is set, else the last one.
OptResult spsa_minimize(const Objective &objective, std::vector<double> theta0, const SpsaConfig &cfg,
                        const Monitor &monitor = {});

struct PowellConfig {
    /// 0 means unlimited.
    uint64_t max_evaluations = 0;
    double line_tolerance = 1e-4;
    /// Stop when a full cycle lowers the cost by less than tol * (|f| + tiny), relative.
    double tolerance = 1e-10;
    uint64_t max_cycles = 100000;
};

/// Direction-set method: line minimizations along each direction in turn,
/// replacing the direction of largest decrease with the cycle's net step when
/// that helps. One trace row per line search. Never exceeds the evaluation cap.
OptResult powell_minimize(const Objective &objective, std::vector<double> theta0, const PowellConfig &cfg,
                          const Monitor &monitor = {});

}  // namespace also

#endif
