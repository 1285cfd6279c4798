// Copyright 2026 The Multiport Authors
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
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>

#include "multiport/bell/bell.hpp"
#include "multiport/cli/commands.hpp"
#include "multiport/cli/config.hpp"
#include "multiport/core/errors.hpp"
#include "multiport/device/closed_form.hpp"
#include "multiport/device/device.hpp"
#include "multiport/feasibility/timing.hpp"

namespace py = pybind11;
using namespace multiport;

namespace {

using E = ExactComplex;
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

ComplexArray to_numpy(const UnitaryMatrix& m) {
  ComplexArray out({m.dim(), m.dim()});
  auto v = out.mutable_unchecked<2>();
  for (int r = 0; r < m.dim(); ++r)
    for (int c = 0; c < m.dim(); ++c) v(r, c) = m(r, c);
  return out;
}

UnitaryMatrix from_numpy(const ComplexArray& a) {
  if (a.ndim() != 2 || a.shape(0) != a.shape(1)) throw DimensionError("expected a square matrix");
  const int n = static_cast<int>(a.shape(0));
  UnitaryMatrix m(n);
  auto v = a.unchecked<2>();
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = v(r, c);
  return m;
}

py::list exact_matrix(const SquareMatrix<E>& m) {
  py::list rows;
  for (int r = 0; r < m.dim(); ++r) {
    py::list row;
    for (int c = 0; c < m.dim(); ++c) row.append(m(r, c).str());
    rows.append(row);
  }
  return rows;
}

template <Amplitude T>
py::list exit_rows(const MultiportSpec& spec, int input, int n_max) {
  const auto rec = exit_record<T>(spec, input, n_max);
  py::list rows;
  for (const auto& row : rec.rows) {
    py::dict d;
    d["N"] = row.encounter;
    py::list amps;
    for (const auto& a : row.amplitudes) amps.append(ScalarOps<T>::to_complex(a));
    d["amplitudes"] = amps;
    d["step_probability"] = ScalarOps<T>::to_double(row.step_probability);
    d["cumulative_probability"] = ScalarOps<T>::to_double(row.cumulative_probability);
    d["internal_probability"] = ScalarOps<T>::to_double(row.internal_probability);
    if constexpr (std::is_same_v<T, E>) {
      py::list exact;
      for (const auto& a : row.amplitudes) exact.append(a.str());
      d["exact"] = exact;
      d["cumulative_exact"] = row.cumulative_probability.str();
    }
    rows.append(d);
  }
  return rows;
}

SquareMatrix<E> exact_three_port() { return steady_state_resolvent<E>(MultiportSpec::regular(3)); }

BellLabel label(const std::string& symbol, int p, int q) { return parse_bell_symbol(symbol).on(p, q); }

Herald herald_kind(const std::string& c) {
  if (c == "s") return Herald::Same;
  if (c == "o") return Herald::Opposite;
  throw ConfigError("herald condition must be 's' or 'o'");
}

py::dict timing_dict(const TimingBudget& b) {
  py::dict d;
  d["d"] = b.d;
  d["refractive_index"] = b.refractive_index;
  d["T"] = b.T;
  d["T_c"] = b.T_c;
  d["max_sampling_rate"] = b.max_sampling_rate;
  d["pulse_duration"] = b.pulse_duration;
  d["bandwidth"] = b.bandwidth;
  d["tau_coh"] = b.tau_coh;
  d["l_coh"] = b.l_coh;
  d["detector_time"] = b.detector_time;
  d["phase_spread"] = b.phase_spread;
  py::list cs;
  for (const auto& c : b.constraints) {
    py::dict x;
    x["name"] = c.name;
    x["lhs"] = c.lhs;
    x["rhs"] = c.rhs;
    x["ok"] = c.ok;
    cs.append(x);
  }
  d["constraints"] = cs;
  d["constraints_ok"] = b.constraints_ok;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Directionally-unbiased multiport simulator";

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ConfigError>(m, "ConfigError", base);
  py::register_exception<SpecError>(m, "SpecError", base);
  py::register_exception<DimensionError>(m, "DimensionError", base);
  py::register_exception<CapacityError>(m, "CapacityError", base);
  py::register_exception<ConvergenceError>(m, "ConvergenceError", base);
  py::register_exception<InvariantError>(m, "InvariantError", base);

  py::class_<VertexParams>(m, "VertexParams")
      .def(py::init<>())
      .def(py::init([](Complex r, Complex t, Complex mirror) { return VertexParams{r, t, mirror}; }), py::arg("r"),
           py::arg("t"), py::arg("mirror") = Complex(0.0, -1.0))
      .def_readwrite("r", &VertexParams::r)
      .def_readwrite("t", &VertexParams::t)
      .def_readwrite("mirror", &VertexParams::mirror)
      .def("is_valid", &VertexParams::is_valid, py::arg("tol") = kFloatTolerance);

  py::class_<MultiportSpec>(m, "MultiportSpec")
      .def(py::init([](int n) { return MultiportSpec::regular(n); }), py::arg("n") = 3)
      .def_static("regular", &MultiportSpec::regular, py::arg("n"))
      .def_readwrite("ports", &MultiportSpec::ports)
      .def_readwrite("vertices", &MultiportSpec::vertices)
      .def_readwrite("edge_phases", &MultiportSpec::edge_phases)
      .def_readwrite("max_steps", &MultiportSpec::max_steps)
      .def("validate", &MultiportSpec::validate)
      .def("identical_vertices", &MultiportSpec::identical_vertices);

  m.def(
      "exit_record",
      [](const MultiportSpec& spec, int input, int n_max, bool exact) {
        return exact ? exit_rows<E>(spec, input, n_max) : exit_rows<Complex>(spec, input, n_max);
      },
      py::arg("spec"), py::arg("input") = 0, py::arg("n_max") = 10, py::arg("exact") = false,
      "Exit amplitudes after each beam-splitter encounter N = 1..n_max.");

  m.def(
      "steady_state",
      [](const MultiportSpec& spec, double tol) {
        const SteadyStateResult r = steady_state(spec, tol);
        py::dict d;
        d["matrix"] = to_numpy(r.matrix);
        d["residual"] = r.residual;
        d["steps_used"] = r.steps_used;
        d["converged"] = r.converged;
        return d;
      },
      py::arg("spec"), py::arg("tol") = 1e-12, "Transition matrix by step evolution.");

  m.def(
      "unitary",
      [](const MultiportSpec& spec, bool exact) -> py::object {
        if (exact) return exact_matrix(steady_state_resolvent<E>(spec));
        return to_numpy(steady_state_resolvent<Complex>(spec));
      },
      py::arg("spec"), py::arg("exact") = false,
      "Transition matrix summed in closed form; exact mode returns field-element strings.");

  m.def("symmetric_unitary", [](double phi_a, double phi) { return to_numpy(symmetric_unitary(phi_a, phi)); },
        py::arg("phi_a"), py::arg("phi"));
  m.def("grover_coin", [](int n) { return to_numpy(grover_coin<Complex>(n)); }, py::arg("n"));
  m.def(
      "compare_up_to_global_phase",
      [](const ComplexArray& a, const ComplexArray& b, double tol) {
        const PhaseMatch p = compare_up_to_global_phase(from_numpy(a), from_numpy(b), tol);
        return py::make_tuple(p.match, p.phase, p.max_dev);
      },
      py::arg("m1"), py::arg("m2"), py::arg("tol") = 1e-9, "Returns (match, phase, max_dev) with m1 ~ phase * m2.");

  m.def(
      "bell_table",
      []() {
        py::list rows;
        for (const auto& r : full_truth_table<E>(exact_three_port())) {
          py::dict d;
          d["input"] = r.input.symbol();
          d["control"] = r.control.symbol();
          d["out_s"] = r.out_same.symbol();
          d["out_o"] = r.out_opposite.symbol();
          d["p_s"] = r.prob_same.to_double();
          d["p_o"] = r.prob_opposite.to_double();
          d["p_s_exact"] = r.prob_same.str();
          d["p_o_exact"] = r.prob_opposite.str();
          rows.append(d);
        }
        return rows;
      },
      "All 16 input x control rows for the default three-port (inputs AB, controls AC, herald A).");

  m.def(
      "herald_split",
      [](const std::string& input, const std::string& control) {
        const auto s = herald_split<E>(label(input, 0, 1), label(control, 0, 2), exact_three_port());
        py::dict d;
        d["s"] = s.same.to_double();
        d["o"] = s.opposite.to_double();
        d["rejected"] = s.rejected.to_double();
        d["s_exact"] = s.same.str();
        d["o_exact"] = s.opposite.str();
        d["rejected_exact"] = s.rejected.str();
        return d;
      },
      py::arg("input"), py::arg("control"));

  m.def(
      "group_table",
      [](const std::string& condition) {
        const GroupTable g = group_table<E>(HeraldCondition{herald_kind(condition), 0}, exact_three_port());
        py::dict d;
        py::list elements;
        for (const auto& e : g.elements) elements.append(e.symbol());
        py::list product;
        for (const auto& row : g.product) {
          py::list r;
          for (const auto& x : row) r.append(x ? py::object(py::str(g.elements[*x].symbol())) : py::none());
          product.append(r);
        }
        d["elements"] = elements;
        d["product"] = product;
        d["identity"] = g.report.identity ? py::object(py::str(g.elements[*g.report.identity].symbol())) : py::none();
        d["klein"] = g.report.klein;
        d["violations"] = g.report.violations;
        return d;
      },
      py::arg("condition") = "s");

  m.def("is_cnot", []() { return cnot_table<E>(exact_three_port()).is_cnot; });

  m.def(
      "assess",
      [](double d, double index, std::optional<double> pulse, std::optional<double> bandwidth,
         std::optional<double> detector) {
        return timing_dict(assess(TimingInputs{d, index, pulse, bandwidth, detector}));
      },
      py::arg("d") = 1e-4, py::arg("refractive_index") = 1.0, py::arg("pulse_duration") = py::none(),
      py::arg("bandwidth") = py::none(), py::arg("detector_time") = py::none());

  m.def(
      "coherence_budget",
      [](double tau, double T_c) -> py::object {
        const CoherenceBudget b = coherence_budget(tau, T_c);
        if (b.unbounded) return py::none();
        return py::int_(b.steps);
      },
      py::arg("tau_coh"), py::arg("T_c"), "floor(tau_coh / T_c), or None when tau_coh is infinite.");

  m.def(
      "report_json",
      [](const std::string& command, const std::string& config, const std::optional<std::string>& mode) {
        cli::RunConfig cfg;
        cfg.mode = cli::mode_from_env();
        cfg = cli::parse_config(config, cfg);
        if (mode) cfg.mode = cli::parse_mode(*mode);
        return cli::report(command, cfg).dump();
      },
      py::arg("command"), py::arg("config") = "", py::arg("mode") = py::none(),
      "Runs a tool subcommand on INI configuration text and returns its JSON document.");
}
