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

#ifndef ALSO_ESTIMATOR_H
#define ALSO_ESTIMATOR_H

#include <cstdint>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "also/ansatz.h"
#include "also/input.h"
#include "also/lightcone.h"
#include "also/shadow.h"

namespace also {

enum class ObjectiveKind { StatePrep, Autoencoder, Custom };

const char *to_string(ObjectiveKind kind);

/// Copies of the input state (or ensemble samples) consumed, and objective
/// evaluations performed. Both only ever grow.
struct ResourceLedger {
    uint64_t copies = 0;
    uint64_t evaluations = 0;

    void charge(uint64_t n) {
        copies += n;
    }
};

/// f(theta) = sum_i weight_i tr(O_i U(theta) rho U(theta)^dagger), to be maximized.
class CostFunction {
   public:
    /// Throws std::invalid_argument if a term is more than `locality_cap`-local
    /// or the input and ansatz disagree on n.
    CostFunction(ObjectiveKind kind, InputSource input, ObservableSum observable, AnsatzConfig ansatz,
                 int locality_cap = 1);

    ObjectiveKind kind() const {
        return kind_;
    }
    const InputSource &input() const {
        return input_;
    }
    const ObservableSum &observable() const {
        return observable_;
    }
    const AnsatzConfig &ansatz() const {
        return ansatz_;
    }
    int num_qubits() const {
        return ansatz_.num_qubits;
    }
    /// Number of (unfused) observable terms M.
    size_t num_terms() const {
        return observable_.size();
    }
    const std::vector<FusedTerm> &fused() const {
        return fused_;
    }
    /// Lightcone supports of the fused terms, in fused order.
    std::vector<std::vector<int>> supports() const;

    /// Throws std::invalid_argument unless theta has this ansatz's shape.
    void check_theta(const ParamTensor &theta) const;

    /// W~ for every fused term (weights folded in).
    std::vector<ReducedOperator> reduced_operators(const ParamTensor &theta) const;

    /// rho restricted to the cone of fused term i (mixture for ensembles).
    const ComplexMatrix &input_reduced(size_t fused_index) const {
        return input_reduced_[fused_index];
    }

   private:
    ObjectiveKind kind_;
    InputSource input_;
    ObservableSum observable_;
    AnsatzConfig ansatz_;
    std::vector<FusedTerm> fused_;
    std::vector<ComplexMatrix> input_reduced_;
};

/// Exact f via lightcone contraction; no copies consumed.
double eval_exact(const CostFunction &cf, const ParamTensor &theta);

enum class ShotMode {
    /// K full-register shots per evaluation shared by all terms (dense input only).
    Shared,
    /// K separate shots per term, drawn from the exact local outcome
    /// distribution; works at any n.
    PerTerm,
};

/// Finite-shot estimate of f. Observable terms must be diagonal. Charges
/// K * M copies regardless of mode.
double eval_shots(const CostFunction &cf, const ParamTensor &theta, uint64_t shots, Rng &rng, ResourceLedger &ledger,
                  ShotMode mode = ShotMode::Shared);

/// Draws T records from cf's input and charges T copies.
ShadowSet acquire_shadows(const CostFunction &cf, size_t records, Rng &rng, ResourceLedger &ledger);

/// Reduced shadows on every support cf needs.
ReducedShadowCache prepare_shadows(const CostFunction &cf, const ShadowSet &set);

/// Shadow estimate of f; charges nothing.
double eval_shadow(const CostFunction &cf, const ParamTensor &theta, const ReducedShadowCache &cache);
double eval_shadow(const CostFunction &cf, const ParamTensor &theta, const ShadowSet &set);

struct ExactSpec {
    bool operator==(const ExactSpec &) const = default;
};
struct ShotsSpec {
    uint64_t shots = 1;
    ShotMode mode = ShotMode::Shared;
    bool operator==(const ShotsSpec &) const = default;
};
struct ShadowSpec {
    uint64_t records = 1;
    bool operator==(const ShadowSpec &) const = default;
};
using BackendSpec = std::variant<ExactSpec, ShotsSpec, ShadowSpec>;

/// "exact", "shots:K", "shots:K:per-term", "shadow:T"; counts accept 1e5-style
/// literals if integral. Throws std::invalid_argument.
BackendSpec parse_backend(const std::string &text);
std::string to_string(const BackendSpec &spec);

/// Stateful evaluator bound to one cost function, backend and ledger. Every
/// call counts as one evaluation.
class Estimator {
   public:
    /// Samples shadows up front for a ShadowSpec (charging T).
    Estimator(const CostFunction &cf, const BackendSpec &spec, Rng rng, ResourceLedger &ledger);
    /// Reuses an existing shadow set; charges nothing.
    Estimator(const CostFunction &cf, std::shared_ptr<const ShadowSet> shadows, ResourceLedger &ledger);

    double value(const ParamTensor &theta);
    double cost(const ParamTensor &theta) {
        return 1.0 - value(theta);
    }

    const BackendSpec &spec() const {
        return spec_;
    }
    const ResourceLedger &ledger() const {
        return *ledger_;
    }
    std::shared_ptr<const ShadowSet> shadows() const {
        return shadows_;
    }

   private:
    const CostFunction *cf_;
    BackendSpec spec_;
    Rng rng_;
    ResourceLedger *ledger_;
    std::shared_ptr<const ShadowSet> shadows_;
    std::shared_ptr<const ReducedShadowCache> cache_;
};

}  // namespace also

#endif
