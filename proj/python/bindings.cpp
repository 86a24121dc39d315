// Copyright 2026 The dickenet Authors
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
#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "dickenet/circuit.hpp"
#include "dickenet/cli.hpp"
#include "dickenet/protocol.hpp"
#include "dickenet/states.hpp"
#include "dickenet/tomography.hpp"
#include "dickenet/witness.hpp"

namespace py = pybind11;
using namespace dickenet;

namespace {

State as_state(const py::handle &h) {
    if (py::isinstance<PureState>(h)) {
        return h.cast<PureState>();
    }
    if (py::isinstance<MixedState>(h)) {
        return h.cast<MixedState>();
    }
    throw py::type_error("expected PureState or MixedState");
}

py::object to_py(const State &s) {
    return std::visit([](const auto &v) { return py::cast(v); }, s);
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "dickenet core bindings";
    m.attr("__version__") = "0.1.0";

    py::register_exception<Error>(m, "Error", PyExc_ValueError);

    py::class_<PureState>(m, "PureState")
        .def(py::init([](std::vector<Label> labels, Vector amps) {
                 return PureState(Layout(std::move(labels)), std::move(amps));
             }),
             py::arg("labels"), py::arg("amplitudes"))
        .def_property_readonly("labels",
                               [](const PureState &s) { return s.layout().labels(); })
        .def_property_readonly("amplitudes", &PureState::amplitudes)
        .def("density_matrix", [](const PureState &s) { return density_matrix(State(s)); });

    py::class_<MixedState>(m, "MixedState")
        .def(py::init([](std::vector<Label> labels, Matrix rho) {
                 return MixedState(Layout(std::move(labels)), std::move(rho));
             }),
             py::arg("labels"), py::arg("matrix"))
        .def_property_readonly("labels",
                               [](const MixedState &s) { return s.layout().labels(); })
        .def_property_readonly("matrix", &MixedState::matrix)
        .def("density_matrix", [](const MixedState &s) { return s.matrix(); });

    m.def("dicke", [](std::size_t n, std::size_t k) { return dicke(n, k); }, py::arg("n"),
          py::arg("k"));
    m.def("bell",
          [](const std::string &which) {
              for (Bell b : {Bell::PhiPlus, Bell::PsiPlus, Bell::PhiMinus, Bell::PsiMinus}) {
                  if (to_string(b) == which) {
                      return bell(b);
                  }
              }
              throw Error("unknown Bell state '" + which + "'");
          },
          py::arg("which"));
    m.def("werner_dicke", &werner_dicke, py::arg("p"));
    m.def("xi_state", &xi_state);
    m.def("client_state",
          [](double theta, double phi, double lambda) {
              return to_py(client_state({theta, phi, lambda}));
          },
          py::arg("theta"), py::arg("phi") = 0.0, py::arg("dephase_lambda") = 0.0);
    m.def("fidelity",
          [](const py::object &a, const py::object &b) {
              return fidelity(as_state(a), as_state(b));
          },
          py::arg("a"), py::arg("b"));
    m.def("partial_trace",
          [](const py::object &s, const std::vector<Label> &keep) {
              return partial_trace(as_state(s), keep);
          },
          py::arg("state"), py::arg("keep"));

    m.def("qtc_theory_fidelity", &qtc_theory_fidelity, py::arg("theta"));
    m.def("qtc_average_fidelity",
          [](double theta, double phi, double lambda, double p, const Label &port) {
              return run_qtc({theta, phi, lambda}, werner_dicke(p), port).average_clone_fidelity;
          },
          py::arg("theta"), py::arg("phi") = 0.0, py::arg("dephase_lambda") = 0.0,
          py::arg("p") = 1.0, py::arg("port") = "b");
    m.def("odt",
          [](double theta, const Label &port, const Label &receiver, const std::string &proj,
             double p) {
              if (proj != "01" && proj != "10") {
                  throw Error("projection must be '01' or '10'");
              }
              const auto r = run_odt({theta, 0.0, 0.0}, werner_dicke(p), port, receiver,
                                     proj == "01" ? SodtProjection::P01 : SodtProjection::P10);
              py::dict d;
              d["success_probability"] = r.success_probability;
              d["fidelity"] = r.teleport_fidelity;
              d["receiver_state"] = r.receiver_state;
              return d;
          },
          py::arg("theta"), py::arg("port") = "b", py::arg("receiver") = "a",
          py::arg("projection") = "01", py::arg("p") = 1.0);

    m.def("fidelity_bound_from_wm", [](double v) { return fidelity_bound_from_wm(v).value; });
    m.def("fidelity_bound_from_projector",
          [](double v) { return fidelity_bound_from_projector(v).value; });
    m.def("biseparable_bound",
          [](double gamma, std::size_t restarts, std::uint64_t seed) {
              BiseparableOptions o;
              o.restarts = restarts;
              o.seed = seed;
              const auto b = biseparable_bound(gamma, o);
              return py::make_tuple(b.value, b.best_bipartition);
          },
          py::arg("gamma"), py::arg("restarts") = 24, py::arg("seed") = 20130);

    m.def("tomography",
          [](const py::object &s, std::uint64_t shots, std::uint64_t seed) {
              return tomography_linear(simulate_pauli_records(as_state(s), shots, seed));
          },
          py::arg("state"), py::arg("shots"), py::arg("seed") = 0);
    m.def("conversion_circuit", [] {
        const auto r = find_conversion_circuit(xi_state(), dicke(4, 2, kServerLabels),
                                               conversion_pool(), kMaxSearchDepth);
        if (!r.found) {
            throw Error("no conversion circuit within the search depth");
        }
        return to_text(r.circuit);
    });

    m.def("command_names", &cli::command_names);
    m.def("run_command",
          [](const std::string &command, std::optional<std::string> config,
             std::optional<std::uint64_t> seed, std::optional<std::string> format) {
              cli::RunOptions o;
              if (config) {
                  o.config_path = *config;
              }
              o.seed = seed;
              o.format = std::move(format);
              o.fixture_dir = DICKENET_FIXTURE_DIR;
              const auto out = cli::run_command(command, o);
              return py::make_tuple(out.exit_code, out.text, out.diagnostics);
          },
          py::arg("command"), py::arg("config") = py::none(), py::arg("seed") = py::none(),
          py::arg("format") = py::none());
}
