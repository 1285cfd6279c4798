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
#include "multiport/cli/commands.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <ostream>
#include <sstream>

#include "multiport/bell/bell.hpp"
#include "multiport/core/errors.hpp"
#include "multiport/core/ports.hpp"
#include "multiport/device/closed_form.hpp"
#include "multiport/device/device.hpp"
#include "multiport/feasibility/timing.hpp"
#include "multiport/walk/network.hpp"

namespace multiport::cli {
namespace {

constexpr const char* kVersion = "0.1.0";

Json real_json(double x) { return x == 0.0 ? 0.0 : x; }

Json bigint_json(const BigInt& n) {
  if (boost::multiprecision::abs(n) < (BigInt(1) << 53)) return n.convert_to<long long>();
  return n.str();
}

Json real_json(const Surd& x) {
  Json j;
  j["exact"] = x.str();
  if (x.is_rational()) {
    if (auto d = as_dyadic(x.one())) j["dyadic"] = Json::array({bigint_json(d->numerator), d->exponent});
  }
  j["decimal"] = real_json(x.to_double());
  return j;
}

Json complex_json(const Complex& z) { return Json{{"re", real_json(z.real())}, {"im", real_json(z.imag())}}; }

Json complex_json(const ExactComplex& z) {
  return Json{{"re", real_json(z.real())}, {"im", real_json(z.imag())}, {"exact", z.str()}};
}

template <Amplitude T>
Json matrix_json(const SquareMatrix<T>& m) {
  Json rows = Json::array();
  for (int r = 0; r < m.dim(); ++r) {
    Json row = Json::array();
    for (int c = 0; c < m.dim(); ++c) row.push_back(complex_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

const char* mode_name(NumericMode m) { return m == NumericMode::Exact ? "exact" : "float"; }

Json envelope(const std::string& command, const RunConfig& cfg, Json data, NumericMode mode) {
  Json j;
  j["schema"] = "multiport." + command + "/" + std::to_string(kSchemaVersion);
  j["command"] = command;
  j["meta"] = Json{{"tool", "multiport"}, {"version", kVersion}};
  j["mode"] = mode_name(mode);
  (void)cfg;
  j["data"] = std::move(data);
  return j;
}

Json envelope(const std::string& command, const RunConfig& cfg, Json data) {
  return envelope(command, cfg, std::move(data), cfg.mode);
}

Json ports_json(int n) {
  Json p = Json::array();
  for (int k = 0; k < n; ++k) p.push_back(port_label(k));
  return p;
}

template <Amplitude T>
Json exits_data(const RunConfig& cfg) {
  const MultiportSpec& spec = cfg.device;
  const int input = parse_port(cfg.input, spec.ports);
  const ExitRecord<T> rec = exit_record<T>(spec, input, cfg.steps);
  Json rows = Json::array();
  for (const auto& r : rec.rows) {
    Json amps = Json::array();
    for (const auto& a : r.amplitudes) amps.push_back(complex_json(a));
    Json probs = Json::array();
    for (const auto& a : r.amplitudes) probs.push_back(real_json(ScalarOps<T>::norm(a)));
    rows.push_back(Json{{"N", r.encounter},
                        {"amplitudes", std::move(amps)},
                        {"port_probabilities", std::move(probs)},
                        {"step_probability", real_json(r.step_probability)},
                        {"cumulative_probability", real_json(r.cumulative_probability)},
                        {"internal_probability", real_json(r.internal_probability)}});
  }
  return Json{{"ports", ports_json(spec.ports)}, {"input", cfg.input}, {"rows", std::move(rows)}};
}

template <Amplitude T>
Json paths_data(const RunConfig& cfg) {
  const MultiportSpec& spec = cfg.device;
  const int from = parse_port(cfg.input, spec.ports);
  const int to = parse_port(cfg.output, spec.ports);
  const auto paths = enumerate_paths<T>(spec, from, to, cfg.encounters);
  Json list = Json::array();
  T total = ScalarOps<T>::zero();
  for (const auto& p : paths) {
    total += p.amplitude;
    list.push_back(Json{{"symbols", p.annotated()},
                        {"compact", p.compact()},
                        {"mirror_encounters", p.mirror_encounters()},
                        {"amplitude", complex_json(p.amplitude)}});
  }
  return Json{{"from", cfg.input},
              {"to", cfg.output},
              {"encounters", cfg.encounters},
              {"count", paths.size()},
              {"paths", std::move(list)},
              {"total", complex_json(total)}};
}

// Steady-state matrix by stepping (float) or by the resolvent (exact).
template <Amplitude T>
SquareMatrix<T> device_unitary(const RunConfig& cfg) {
  if constexpr (ScalarOps<T>::kExact) {
    return steady_state_resolvent<ExactComplex>(cfg.device);
  } else {
    const SteadyStateResult r = steady_state(cfg.device, cfg.tol);
    if (!r.converged) {
      std::ostringstream msg;
      msg << "steady state not reached within " << cfg.device.max_steps << " steps (residual " << r.residual
          << ", tol " << cfg.tol << ")";
      throw ConvergenceError(msg.str(), r.residual);
    }
    return r.matrix;
  }
}

Json unitary_float(const RunConfig& cfg) {
  const SteadyStateResult r = steady_state(cfg.device, cfg.tol);
  if (!r.converged) {
    std::ostringstream msg;
    msg << "steady state not reached within " << cfg.device.max_steps << " steps (residual " << r.residual
        << ", tol " << cfg.tol << ")";
    throw ConvergenceError(msg.str(), r.residual);
  }
  const PhaseMatch g = compare_up_to_global_phase(r.matrix, grover_coin(cfg.device.ports));
  return Json{{"method", "steps"},
              {"matrix", matrix_json(r.matrix)},
              {"residual", real_json(r.residual)},
              {"steps_used", r.steps_used},
              {"converged", r.converged},
              {"unitarity_defect", real_json(unitarity_defect(r.matrix))},
              {"grover_match", Json{{"match", g.match}, {"phase", complex_json(g.phase)}, {"max_dev", real_json(g.max_dev)}}}};
}

Json unitary_exact(const RunConfig& cfg) {
  const ExactMatrix u = steady_state_resolvent<ExactComplex>(cfg.device);
  const ExactMatrix defect = u.adjoint() * u - ExactMatrix::identity(u.dim());
  bool unitary = true;
  for (int r = 0; r < u.dim(); ++r)
    for (int c = 0; c < u.dim(); ++c)
      if (!defect(r, c).is_zero()) unitary = false;
  const PhaseMatch g = compare_up_to_global_phase(u.to_complex(), grover_coin(cfg.device.ports));
  return Json{{"method", "resolvent"},
              {"matrix", matrix_json(u)},
              {"residual", real_json(0.0)},
              {"converged", true},
              {"unitary", unitary},
              {"grover_match", Json{{"match", g.match}, {"phase", complex_json(g.phase)}, {"max_dev", real_json(g.max_dev)}}}};
}

template <Amplitude T>
Json bell_data(const RunConfig& cfg) {
  const SquareMatrix<T> u = device_unitary<T>(cfg);
  const auto rows = full_truth_table<T>(u);
  Json list = Json::array();
  for (const auto& r : rows) {
    list.push_back(Json{{"input", r.input.symbol()},
                        {"control", r.control.symbol()},
                        {"out_s", r.out_same.symbol()},
                        {"out_o", r.out_opposite.symbol()},
                        {"prob_s", real_json(r.prob_same)},
                        {"prob_o", real_json(r.prob_opposite)},
                        {"phase_s", complex_json(r.phase_same)},
                        {"phase_o", complex_json(r.phase_opposite)}});
  }
  Json conversion = Json::array();
  for (const auto& r : rows)
    if (r.input.family == BellFamily::Psi && r.input.sign == BellSign::Plus)
      conversion.push_back(Json{{"control", r.control.symbol()}, {"output", r.out_same.symbol()}});
  return Json{{"input_pair", "AB"},
              {"control_pair", "AC"},
              {"output_pair", "BC"},
              {"herald", "A"},
              {"rows", std::move(list)},
              {"psi_plus_conversion", std::move(conversion)}};
}

Json group_json(const GroupTable& t) {
  Json elements = Json::array();
  for (const auto& e : t.elements) elements.push_back(e.symbol());
  Json table = Json::array();
  for (int a = 0; a < 4; ++a) {
    Json row = Json::array();
    for (int b = 0; b < 4; ++b)
      row.push_back(t.product[a][b] ? Json(t.elements[*t.product[a][b]].symbol()) : Json(nullptr));
    table.push_back(std::move(row));
  }
  const GroupReport& r = t.report;
  Json report{{"closure", r.closure},
              {"associative", r.associative},
              {"commutative", r.commutative},
              {"identity", r.identity ? Json(t.elements[*r.identity].symbol()) : Json(nullptr)},
              {"self_inverse", r.self_inverse},
              {"klein", r.klein},
              {"violations", r.violations},
              {"ok", r.ok()}};
  return Json{{"elements", std::move(elements)}, {"table", std::move(table)}, {"report", std::move(report)}};
}

template <Amplitude T>
Json group_data(const RunConfig& cfg) {
  const SquareMatrix<T> u = device_unitary<T>(cfg);
  const GroupTable t = group_table<T>(cfg.condition, u);
  Json j{{"condition", std::string(1, cfg.condition.code())}};
  const Json body = group_json(t);
  for (const auto& [k, v] : body.items()) j[k] = v;
  return j;
}

template <Amplitude T>
Json cnot_data(const RunConfig& cfg) {
  const SquareMatrix<T> u = device_unitary<T>(cfg);
  const CnotTable t = cnot_table<T>(u);
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back(Json{{"input", r.input.symbol()},
                        {"control", r.control.symbol()},
                        {"control_bit", r.control_bit},
                        {"target_bit", r.target_bit},
                        {"output", r.output.symbol()},
                        {"output_bit", r.output_bit}});
  return Json{{"encoding", "+ is 0, - is 1"}, {"rows", std::move(rows)}, {"is_cnot", t.is_cnot}};
}

GraphSpec walk_graph(const RunConfig& cfg) {
  if (cfg.graph) return *cfg.graph;
  WalkVertex v;
  v.name = "v0";
  v.kind = cfg.default_vertex;
  v.degree = cfg.device.ports;
  v.device = cfg.device;
  return GraphSpec::single_vertex(v);
}

template <class V>
Json reals_json(const std::vector<V>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(real_json(x));
  return a;
}

template <Amplitude T>
Json walk_data(const RunConfig& cfg) {
  const GraphSpec g = walk_graph(cfg);
  const WalkEngine<T> engine = build_network<T>(g);
  const int input = g.find_lead(cfg.input);
  const WalkSeries<T> series = run_walk(engine, input, cfg.steps, cfg.schedule.empty() ? nullptr : &cfg.schedule);
  Json leads = Json::array();
  for (const auto& l : g.leads) leads.push_back(l.name);
  Json edges = Json::array();
  for (const auto& e : g.edges)
    edges.push_back(std::to_string(e.a.vertex) + ":" + port_label(e.a.port) + "-" + std::to_string(e.b.vertex) + ":" +
                    port_label(e.b.port));
  Json vertices = Json::array();
  for (const auto& v : g.vertices) vertices.push_back(Json{{"name", v.name}, {"kind", v.kind == VertexKind::Physical ? "physical" : "coin"}, {"degree", v.degree}});
  Json frames = Json::array();
  for (const auto& f : series.frames) {
    Json amps = Json::array();
    for (const auto& a : f.exit_amplitudes) amps.push_back(complex_json(a));
    frames.push_back(Json{{"step", f.step},
                          {"exit_amplitudes", std::move(amps)},
                          {"exit_probability", reals_json(f.exit_probability)},
                          {"cumulative_exit", reals_json(f.cumulative_exit)},
                          {"edge_probability", reals_json(f.edge_probability)},
                          {"vertex_probability", reals_json(f.vertex_probability)},
                          {"internal", real_json(f.internal)},
                          {"total", real_json(f.total)}});
  }
  return Json{{"input", cfg.input},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)},
              {"leads", std::move(leads)},
              {"scheduled_steps", cfg.schedule.steps.size()},
              {"frames", std::move(frames)}};
}

Json optional_json(const std::optional<double>& v) { return v ? real_json(*v) : Json(nullptr); }

Json finite_json(double v) { return std::isinf(v) ? Json("inf") : real_json(v); }

template <class F>
Json by_mode(const RunConfig& cfg, F&& f) {
  return cfg.mode == NumericMode::Exact ? f.template operator()<ExactComplex>() : f.template operator()<Complex>();
}

std::string csv_cell(const Json& j) {
  if (j.is_null()) return "";
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
  }
  if (j.is_object() && j.contains("decimal")) return j["decimal"].dump();
  return j.dump();
}

void csv_line(std::ostringstream& out, const std::vector<Json>& cells) {
  for (size_t k = 0; k < cells.size(); ++k) out << (k ? "," : "") << csv_cell(cells[k]);
  out << "\n";
}

Json exact_of(const Json& z) { return z.contains("exact") ? z["exact"] : Json(nullptr); }

}  // namespace

Json exits_report(const RunConfig& cfg) {
  return envelope("exits", cfg, by_mode(cfg, [&]<class T>() { return exits_data<T>(cfg); }));
}

Json paths_report(const RunConfig& cfg) {
  return envelope("paths", cfg, by_mode(cfg, [&]<class T>() { return paths_data<T>(cfg); }));
}

Json unitary_report(const RunConfig& cfg) {
  return envelope("unitary", cfg, cfg.mode == NumericMode::Exact ? unitary_exact(cfg) : unitary_float(cfg));
}

Json family_report(const RunConfig& cfg) {
  if (cfg.phi_a_count < 1) throw ConfigError("family sweep needs count >= 1");
  Json points = Json::array();
  for (int k = 0; k < cfg.phi_a_count; ++k) {
    const double phi_a = cfg.phi_a_count == 1 ? cfg.phi_a_start
                                              : cfg.phi_a_start + (cfg.phi_a_stop - cfg.phi_a_start) * k / (cfg.phi_a_count - 1);
    const UnitaryMatrix u = symmetric_unitary(phi_a, cfg.phi);
    const PhaseMatch g = compare_up_to_global_phase(u, grover_coin(3));
    points.push_back(Json{{"phi_a", real_json(phi_a)},
                          {"phi", real_json(cfg.phi)},
                          {"matrix", matrix_json(u)},
                          {"unitarity_defect", real_json(unitarity_defect(u))},
                          {"grover_match", Json{{"match", g.match}, {"phase", complex_json(g.phase)}, {"max_dev", real_json(g.max_dev)}}}});
  }
  // The sweep is floating point whatever the requested mode.
  return envelope("family", cfg, Json{{"points", std::move(points)}}, NumericMode::Float);
}

Json bell_table_report(const RunConfig& cfg) {
  return envelope("bell-table", cfg, by_mode(cfg, [&]<class T>() { return bell_data<T>(cfg); }));
}

Json group_table_report(const RunConfig& cfg) {
  return envelope("group-table", cfg, by_mode(cfg, [&]<class T>() { return group_data<T>(cfg); }));
}

Json cnot_report(const RunConfig& cfg) {
  return envelope("cnot", cfg, by_mode(cfg, [&]<class T>() { return cnot_data<T>(cfg); }));
}

Json walk_report(const RunConfig& cfg) {
  return envelope("walk", cfg, by_mode(cfg, [&]<class T>() { return walk_data<T>(cfg); }));
}

Json feasibility_report(const RunConfig& cfg) {
  const TimingBudget b = assess(cfg.timing);
  const CoherenceBudget c = coherence_budget(cfg.tau_coh.value_or(b.tau_coh), b.T_c);
  Json constraints = Json::array();
  for (const auto& k : b.constraints)
    constraints.push_back(Json{{"name", k.name}, {"lhs", finite_json(k.lhs)}, {"rhs", finite_json(k.rhs)}, {"ok", k.ok}});
  Json data{{"d", real_json(b.d)},
            {"refractive_index", real_json(b.refractive_index)},
            {"T", real_json(b.T)},
            {"T_c", real_json(b.T_c)},
            {"max_sampling_rate", real_json(b.max_sampling_rate)},
            {"pulse_duration", optional_json(b.pulse_duration)},
            {"bandwidth", optional_json(b.bandwidth)},
            {"tau_coh", finite_json(b.tau_coh)},
            {"l_coh", finite_json(b.l_coh)},
            {"detector_time", optional_json(b.detector_time)},
            {"phase_spread", real_json(b.phase_spread)},
            {"constraints", std::move(constraints)},
            {"constraints_ok", b.constraints_ok},
            {"violations", b.violations()},
            {"coherence_budget",
             Json{{"steps", c.unbounded ? Json(nullptr) : Json(c.steps)}, {"unbounded", c.unbounded}, {"tau_coh", finite_json(c.tau_coh)}}}};
  return envelope("feasibility", cfg, std::move(data), NumericMode::Float);
}

Json report(const std::string& command, const RunConfig& cfg) {
  if (command == "exits") return exits_report(cfg);
  if (command == "paths") return paths_report(cfg);
  if (command == "unitary") return unitary_report(cfg);
  if (command == "family") return family_report(cfg);
  if (command == "bell-table") return bell_table_report(cfg);
  if (command == "group-table") return group_table_report(cfg);
  if (command == "cnot") return cnot_report(cfg);
  if (command == "walk") return walk_report(cfg);
  if (command == "feasibility") return feasibility_report(cfg);
  throw ConfigError("unknown command '" + command + "'");
}

std::string to_csv(const Json& rep) {
  const std::string cmd = rep.at("command");
  const Json& d = rep.at("data");
  const bool exact = rep.at("mode") == "exact";
  std::ostringstream out;
  auto complex_cells = [&](std::vector<Json>& cells, const Json& z) {
    cells.push_back(z["re"]);
    cells.push_back(z["im"]);
    if (exact) cells.push_back(exact_of(z));
  };
  if (cmd == "exits") {
    csv_line(out, exact ? std::vector<Json>{"N", "port", "re", "im", "exact", "probability", "cumulative"}
                        : std::vector<Json>{"N", "port", "re", "im", "probability", "cumulative"});
    for (const auto& r : d["rows"])
      for (size_t p = 0; p < r["amplitudes"].size(); ++p) {
        std::vector<Json> cells{r["N"], d["ports"][p]};
        complex_cells(cells, r["amplitudes"][p]);
        cells.push_back(r["port_probabilities"][p]);
        cells.push_back(r["cumulative_probability"]);
        csv_line(out, cells);
      }
  } else if (cmd == "paths") {
    csv_line(out, exact ? std::vector<Json>{"index", "symbols", "re", "im", "exact"}
                        : std::vector<Json>{"index", "symbols", "re", "im"});
    int k = 0;
    for (const auto& p : d["paths"]) {
      std::vector<Json> cells{k++, p["symbols"]};
      complex_cells(cells, p["amplitude"]);
      csv_line(out, cells);
    }
  } else if (cmd == "unitary") {
    csv_line(out, exact ? std::vector<Json>{"row", "col", "re", "im", "exact"} : std::vector<Json>{"row", "col", "re", "im"});
    const Json& m = d["matrix"];
    for (size_t r = 0; r < m.size(); ++r)
      for (size_t c = 0; c < m[r].size(); ++c) {
        std::vector<Json> cells{port_label(static_cast<int>(r)), port_label(static_cast<int>(c))};
        complex_cells(cells, m[r][c]);
        csv_line(out, cells);
      }
  } else if (cmd == "family") {
    csv_line(out, {"phi_a", "phi", "row", "col", "re", "im"});
    for (const auto& p : d["points"])
      for (size_t r = 0; r < p["matrix"].size(); ++r)
        for (size_t c = 0; c < p["matrix"][r].size(); ++c)
          csv_line(out, {p["phi_a"], p["phi"], r, c, p["matrix"][r][c]["re"], p["matrix"][r][c]["im"]});
  } else if (cmd == "bell-table") {
    csv_line(out, {"input", "control", "out_s", "out_o", "prob_s", "prob_o"});
    for (const auto& r : d["rows"]) csv_line(out, {r["input"], r["control"], r["out_s"], r["out_o"], r["prob_s"], r["prob_o"]});
  } else if (cmd == "group-table") {
    std::vector<Json> head{"x"};
    for (const auto& e : d["elements"]) head.push_back(e);
    csv_line(out, head);
    for (size_t a = 0; a < d["table"].size(); ++a) {
      std::vector<Json> cells{d["elements"][a]};
      for (const auto& v : d["table"][a]) cells.push_back(v);
      csv_line(out, cells);
    }
  } else if (cmd == "cnot") {
    csv_line(out, {"input", "control", "control_bit", "target_bit", "output", "output_bit"});
    for (const auto& r : d["rows"])
      csv_line(out, {r["input"], r["control"], r["control_bit"], r["target_bit"], r["output"], r["output_bit"]});
  } else if (cmd == "walk") {
    csv_line(out, {"step", "lead", "exit_probability", "cumulative"});
    for (const auto& f : d["frames"])
      for (size_t l = 0; l < d["leads"].size(); ++l)
        csv_line(out, {f["step"], d["leads"][l], f["exit_probability"][l], f["cumulative_exit"][l]});
  } else if (cmd == "feasibility") {
    csv_line(out, {"quantity", "value"});
    for (const char* k : {"d", "refractive_index", "T", "T_c", "max_sampling_rate", "pulse_duration", "bandwidth",
                          "tau_coh", "l_coh", "detector_time", "phase_spread", "constraints_ok"})
      csv_line(out, {k, d[k]});
    csv_line(out, {"coherence_budget", d["coherence_budget"]["unbounded"].get<bool>() ? Json("unbounded")
                                                                                     : d["coherence_budget"]["steps"]});
  } else {
    throw ConfigError("no CSV layout for '" + cmd + "'");
  }
  return out.str();
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const ConfigError*>(&e)) return kConfigFailure;
  if (dynamic_cast<const SpecError*>(&e) || dynamic_cast<const DimensionError*>(&e) ||
      dynamic_cast<const CapacityError*>(&e))
    return kSpecFailure;
  if (dynamic_cast<const ConvergenceError*>(&e)) return kConvergenceFailure;
  return kInvariantFailure;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Directionally-unbiased multiport simulator", "multiport"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string config_path, mode, format;
  app.add_option("--config", config_path, "INI configuration file");
  app.add_option("--mode", mode, std::string("exact or float (default from ") + kModeEnvVar + ")");
  app.add_option("--format", format, "json or csv");

  // Flag values are kept as text and applied after the config file.
  std::map<std::string, std::string> flags;
  auto opt = [&](CLI::App* sub, const std::string& name, const std::string& help) {
    sub->add_option("--" + name, flags[name], help);
  };
  auto device_opts = [&](CLI::App* sub) {
    opt(sub, "n", "number of ports");
    opt(sub, "r", "beam-splitter reflection amplitude");
    opt(sub, "t", "beam-splitter transmission amplitude");
    opt(sub, "mirror", "mirror round-trip factor");
    opt(sub, "edge-phase", "edge phase (all edges)");
    opt(sub, "max-steps", "step limit for the steady state");
  };
  struct Command {
    const char* name;
    const char* help;
  };
  const Command commands[] = {
      {"exits", "exit amplitudes per encounter"},
      {"paths", "paths and amplitudes for one exit event"},
      {"unitary", "steady-state transition matrix"},
      {"family", "symmetric unitary family sweep"},
      {"bell-table", "Bell-state truth table"},
      {"group-table", "Bell-symmetry multiplication table"},
      {"cnot", "CNOT bit table"},
      {"walk", "scattering walk time series"},
      {"feasibility", "timing and coherence budget"},
  };
  std::map<std::string, CLI::App*> subs;
  for (const auto& c : commands) subs[c.name] = app.add_subcommand(c.name, c.help);
  for (const char* name : {"exits", "paths", "unitary", "bell-table", "group-table", "cnot", "walk"}) device_opts(subs[name]);
  opt(subs["exits"], "input", "input port");
  opt(subs["exits"], "steps", "largest encounter N");
  opt(subs["paths"], "from", "input port");
  opt(subs["paths"], "to", "exit port");
  opt(subs["paths"], "encounters", "encounter count N");
  for (const char* name : {"unitary", "bell-table", "group-table", "cnot"}) opt(subs[name], "tol", "steady-state tolerance");
  opt(subs["family"], "phi-a-start", "first phi_a");
  opt(subs["family"], "phi-a-stop", "last phi_a");
  opt(subs["family"], "count", "number of sweep points");
  opt(subs["family"], "phi", "phi");
  opt(subs["group-table"], "condition", "herald condition, s or o");
  opt(subs["walk"], "input", "input lead");
  opt(subs["walk"], "steps", "number of scattering steps");
  opt(subs["walk"], "vertex-kind", "physical or coin for the default single vertex");
  opt(subs["feasibility"], "d", "edge length (m)");
  opt(subs["feasibility"], "index", "refractive index");
  opt(subs["feasibility"], "pulse-duration", "pulse duration (s)");
  opt(subs["feasibility"], "bandwidth", "bandwidth (Hz)");
  opt(subs["feasibility"], "detector-time", "detector time T_D (s)");
  opt(subs["feasibility"], "tau-coh", "coherence time override (s)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kConfigFailure;
  }

  std::string command;
  for (const auto& [name, sub] : subs)
    if (sub->parsed()) command = name;

  try {
    RunConfig cfg;
    cfg.mode = mode_from_env();
    if (!config_path.empty()) cfg = load_config(config_path, cfg);
    if (!mode.empty()) cfg.mode = parse_mode(mode);
    if (!format.empty()) cfg.format = parse_format(format);

    auto flag = [&](const std::string& name) -> const std::string* {
      auto it = flags.find(name);
      return it == flags.end() || it->second.empty() ? nullptr : &it->second;
    };
    auto as_int = [&](const std::string& name, const std::string& v) {
      try {
        size_t used = 0;
        const int x = std::stoi(v, &used);
        if (used == v.size()) return x;
      } catch (const std::exception&) {
      }
      throw ConfigError("--" + name + ": expected an integer, got '" + v + "'");
    };
    auto as_real = [&](const std::string& name, const std::string& v) {
      try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used == v.size()) return x;
      } catch (const std::exception&) {
      }
      throw ConfigError("--" + name + ": expected a number, got '" + v + "'");
    };
    if (auto v = flag("n")) {
      const int n = as_int("n", *v);
      if (n < 1) throw ConfigError("--n: expected a positive port count");
      resize_device(cfg.device, n);
    }
    for (const char* key : {"r", "t", "mirror"})
      if (auto v = flag(key)) {
        const Complex z = parse_complex(*v);
        for (auto& c : cfg.device.vertices) (std::string(key) == "r" ? c.r : std::string(key) == "t" ? c.t : c.mirror) = z;
      }
    if (auto v = flag("edge-phase")) cfg.device.edge_phases.assign(cfg.device.ports, parse_phase(*v));
    if (auto v = flag("max-steps")) cfg.device.max_steps = as_int("max-steps", *v);
    if (auto v = flag("input")) cfg.input = *v;
    if (auto v = flag("from")) cfg.input = *v;
    if (auto v = flag("to")) cfg.output = *v;
    if (auto v = flag("steps")) cfg.steps = as_int("steps", *v);
    if (auto v = flag("encounters")) cfg.encounters = as_int("encounters", *v);
    if (auto v = flag("tol")) cfg.tol = as_real("tol", *v);
    if (auto v = flag("condition")) {
      if (*v == "s") cfg.condition.kind = Herald::Same;
      else if (*v == "o") cfg.condition.kind = Herald::Opposite;
      else throw ConfigError("--condition: expected 's' or 'o'");
    }
    if (auto v = flag("vertex-kind")) {
      if (*v == "physical") cfg.default_vertex = VertexKind::Physical;
      else if (*v == "coin") cfg.default_vertex = VertexKind::IdealCoin;
      else throw ConfigError("--vertex-kind: expected 'physical' or 'coin'");
    }
    if (auto v = flag("phi-a-start")) cfg.phi_a_start = parse_phase(*v);
    if (auto v = flag("phi-a-stop")) cfg.phi_a_stop = parse_phase(*v);
    if (auto v = flag("count")) cfg.phi_a_count = as_int("count", *v);
    if (auto v = flag("phi")) cfg.phi = parse_phase(*v);
    if (auto v = flag("d")) cfg.timing.d = as_real("d", *v);
    if (auto v = flag("index")) cfg.timing.refractive_index = as_real("index", *v);
    if (auto v = flag("pulse-duration")) cfg.timing.pulse_duration = as_real("pulse-duration", *v);
    if (auto v = flag("bandwidth")) cfg.timing.bandwidth = as_real("bandwidth", *v);
    if (auto v = flag("detector-time")) cfg.timing.detector_time = as_real("detector-time", *v);
    if (auto v = flag("tau-coh")) cfg.tau_coh = as_real("tau-coh", *v);

    const Json rep = report(command, cfg);
    if (cfg.format == OutputFormat::Csv) out << to_csv(rep);
    else out << rep.dump(2) << "\n";
    return kOk;
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    err << "multiport " << command << ": " << e.what() << "\n";
    return code;
  }
}

}  // namespace multiport::cli
