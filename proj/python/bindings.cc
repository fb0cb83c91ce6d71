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

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "also/errors.h"
#include "also/experiment.h"
#include "also/shadow_io.h"

namespace py = pybind11;
using namespace also;

namespace {

ParamTensor shaped(const AnsatzConfig &a, const std::vector<double> &theta) {
    return ParamTensor(a.num_qubits, a.depth, a.brick.num_params(), theta);
}

// A dense state from a complex vector, or a basis product state from a 0/1 list.
InputSource to_source(const py::object &state) {
    if (py::isinstance<py::list>(state) || py::isinstance<py::tuple>(state)) {
        auto bits = state.cast<std::vector<int>>();
        return ProductState::basis(bits);
    }
    auto amps = state.cast<ComplexVector>();
    const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(amps.size()))));
    return PureState(n, std::move(amps));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Lightcone contraction, Pauli shadows and variational optimization for layered circuits.";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    m.def(
        "layout",
        [](int n, int d) {
            std::vector<std::tuple<int, int, int, int>> out;
            for (const auto &p : also::layout(n, d)) {
                out.emplace_back(p.layer, p.block, p.a, p.b);
            }
            return out;
        },
        py::arg("n"), py::arg("d"), "Bricks as (layer, block, a, b) in application order.");

    m.def(
        "brick_unitary",
        [](const std::string &name, const std::vector<double> &gamma) {
            return also::brick_unitary(BrickTemplate::from_name(name), gamma);
        },
        py::arg("brick"), py::arg("gamma"));

    m.def(
        "apply_ansatz",
        [](const ComplexVector &amps, int d, const std::vector<double> &theta, const std::string &brick,
           bool adjoint) {
            const int n = static_cast<int>(std::lround(std::log2(static_cast<double>(amps.size()))));
            AnsatzConfig a{n, d, BrickTemplate::from_name(brick)};
            return also::apply_ansatz(PureState(n, amps), shaped(a, theta), a.brick, adjoint).amplitudes();
        },
        py::arg("amplitudes"), py::arg("d"), py::arg("theta"), py::arg("brick") = "ry-cnot-ry",
        py::arg("adjoint") = false);

    m.def(
        "lightcone",
        [](const std::vector<int> &support, int n, int d) {
            const auto cone = compute_lightcone(support, n, d, also::layout(n, d));
            std::vector<std::tuple<int, int, int, int>> bricks;
            for (const auto &p : cone.bricks) {
                bricks.emplace_back(p.layer, p.block, p.a, p.b);
            }
            return py::make_tuple(cone.qubits, bricks);
        },
        py::arg("support"), py::arg("n"), py::arg("d"));

    m.def(
        "plan_samples",
        [](uint64_t terms, uint64_t evaluations, int depth, double eps, double delta, double max_norm,
           const std::string &rule, int k0, int k1) {
            SamplePlanInput in{terms, evaluations, depth, eps, delta, max_norm, k0, k1, SamplePlanRule::TwoLocal};
            if (rule == "general") {
                in.rule = SamplePlanRule::General;
            } else if (rule != "two-local") {
                throw std::invalid_argument("rule must be 'two-local' or 'general'");
            }
            return also::plan_samples(in);
        },
        py::arg("M"), py::arg("C"), py::arg("d"), py::arg("eps"), py::arg("delta"), py::arg("max_norm") = 1.0,
        py::arg("rule") = "two-local", py::arg("k0") = 2, py::arg("k1") = 1);

    py::class_<ShadowSet>(m, "ShadowSet")
        .def_property_readonly("n", &ShadowSet::num_qubits)
        .def_property_readonly("seed", &ShadowSet::seed)
        .def("__len__", &ShadowSet::size)
        .def_property_readonly("codes",
                               [](const ShadowSet &s) {
                                   py::array_t<uint8_t> out({s.size(), static_cast<size_t>(s.num_qubits())});
                                   std::copy(s.codes().begin(), s.codes().end(), out.mutable_data());
                                   return out;
                               },
                               "T x n array of 2 * basis + outcome (basis 0=Z, 1=X, 2=Y).")
        .def(
            "reduce", [](const ShadowSet &s, const std::vector<int> &support) { return also::reduce(s, support).matrix; },
            py::arg("support"))
        .def(
            "save", [](const ShadowSet &s, const std::string &path) { write_shadows(std::filesystem::path(path), s); },
            py::arg("path"))
        .def("to_json", &shadows_to_json, py::arg("max_records") = SIZE_MAX)
        .def_static("concat", &ShadowSet::concat);

    m.def(
        "sample_shadows",
        [](const py::object &state, size_t records, uint64_t seed) {
            Rng rng(seed);
            InputSource source = to_source(state);
            py::gil_scoped_release release;
            return also::sample_shadows(source, records, rng);
        },
        py::arg("state"), py::arg("T"), py::arg("seed") = 0,
        "Shadows of a dense state (complex vector) or a basis state (list of bits).");

    m.def(
        "read_shadows", [](const std::string &path) { return also::read_shadows(std::filesystem::path(path)); },
        py::arg("path"));

    py::class_<Problem>(m, "Problem")
        .def(py::init([](const std::string &task, int n, int d, int n_b, uint64_t seed, const std::string &brick,
                         const std::string &target) {
                 ProblemSpec spec;
                 spec.task = task == "autoencoder" ? ObjectiveKind::Autoencoder : ObjectiveKind::StatePrep;
                 if (task != "autoencoder" && task != "state-prep") {
                     throw std::invalid_argument("task must be 'state-prep' or 'autoencoder'");
                 }
                 spec.num_qubits = n;
                 spec.depth = d;
                 spec.trash = n_b;
                 spec.seed = seed;
                 spec.brick = brick;
                 spec.target = target == "basis" ? TargetKind::Basis
                                                 : (target == "compatible" ? TargetKind::Compatible : TargetKind::Auto);
                 return make_problem(spec);
             }),
             py::arg("task"), py::arg("n"), py::arg("d"), py::arg("n_B") = 0, py::arg("seed") = 0,
             py::arg("brick") = "ry-cnot-ry", py::arg("target") = "auto")
        .def_property_readonly("num_params",
                               [](const Problem &p) { return p.ansatz.zeros().size(); })
        .def_property_readonly("num_terms", [](const Problem &p) { return p.cost.num_terms(); })
        .def("to_json", [](const Problem &p) { return problem_to_json(p.spec); })
        .def(
            "eval_exact",
            [](const Problem &p, const std::vector<double> &theta) { return also::eval_exact(p.cost, shaped(p.ansatz, theta)); },
            py::arg("theta"), "f(theta); the cost is 1 - f.")
        .def(
            "eval_shadow",
            [](const Problem &p, const std::vector<double> &theta, const ShadowSet &s) {
                return also::eval_shadow(p.cost, shaped(p.ansatz, theta), s);
            },
            py::arg("theta"), py::arg("shadows"))
        .def(
            "eval_shots",
            [](const Problem &p, const std::vector<double> &theta, uint64_t shots, uint64_t seed) {
                Rng rng(seed);
                ResourceLedger ledger;
                const double v = also::eval_shots(p.cost, shaped(p.ansatz, theta), shots, rng, ledger);
                return py::make_tuple(v, ledger.copies);
            },
            py::arg("theta"), py::arg("K"), py::arg("seed") = 0, "Returns (estimate, copies charged).")
        .def(
            "sample_shadows",
            [](const Problem &p, size_t records, uint64_t seed) {
                Rng rng(seed);
                return also::sample_shadows(p.cost.input(), records, rng);
            },
            py::arg("T"), py::arg("seed") = 0)
        .def("has_infidelity", &Problem::has_infidelity)
        .def(
            "infidelity",
            [](const Problem &p, const std::vector<double> &theta) { return p.infidelity(shaped(p.ansatz, theta)); },
            py::arg("theta"));

    m.def("presets", &preset_names);
    m.def("preset_config", &preset_config, py::arg("name"));
    m.def(
        "parse_config",
        [](const std::string &text, const std::vector<std::string> &overrides) {
            return config_to_json(also::parse_config(text, overrides));
        },
        py::arg("text"), py::arg("overrides") = std::vector<std::string>{}, "Resolved config as JSON text.");
    m.def(
        "run_experiment",
        [](const std::string &text, const std::vector<std::string> &overrides, bool write_files) {
            const auto cfg = also::parse_config(text, overrides);
            RunSummary summary;
            {
                py::gil_scoped_release release;
                summary = also::run_experiment(cfg, write_files);
            }
            return summary_to_json(summary);
        },
        py::arg("config"), py::arg("overrides") = std::vector<std::string>{}, py::arg("write_files") = true,
        "Runs an experiment; returns the summary JSON text.");
}
