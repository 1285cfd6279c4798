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
#include "multiport/cli/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <regex>
#include <set>
#include <sstream>

#include "multiport/core/errors.hpp"
#include "multiport/core/ports.hpp"

namespace multiport::cli {
namespace {

namespace pt = boost::property_tree;

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) out.push_back(trim(cur));
  return out;
}

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

// Real literal: decimal or a/b.
bool parse_real(const std::string& text, double& out) {
  const std::string s = trim(text);
  if (s.empty()) return false;
  const auto slash = s.find('/');
  try {
    size_t used = 0;
    if (slash == std::string::npos) {
      out = std::stod(s, &used);
      return used == s.size();
    }
    const std::string a = s.substr(0, slash);
    const std::string b = s.substr(slash + 1);
    size_t ua = 0;
    size_t ub = 0;
    const double num = std::stod(a, &ua);
    const double den = std::stod(b, &ub);
    if (ua != a.size() || ub != b.size() || den == 0.0) return false;
    out = num / den;
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// Maps "section.key" and "[section]" to 1-based source lines.
class LineIndex {
 public:
  explicit LineIndex(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string section;
    int n = 0;
    while (std::getline(in, line)) {
      ++n;
      const std::string t = trim(line);
      if (t.empty() || t[0] == ';' || t[0] == '#') continue;
      if (t.front() == '[' && t.back() == ']') {
        section = trim(t.substr(1, t.size() - 2));
        lines_.emplace("[" + section + "]", n);
        continue;
      }
      const auto eq = t.find('=');
      if (eq != std::string::npos) lines_.emplace(section + "." + trim(t.substr(0, eq)), n);
    }
  }
  int of(const std::string& key) const {
    auto it = lines_.find(key);
    return it == lines_.end() ? 0 : it->second;
  }

 private:
  std::map<std::string, int> lines_;
};

// One section with typed, line-aware accessors.
class Section {
 public:
  Section(std::string name, const pt::ptree& tree, const LineIndex& lines)
      : name_(std::move(name)), tree_(tree), lines_(lines) {}

  const std::string& name() const { return name_; }

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const int line = key.empty() ? lines_.of("[" + name_ + "]") : lines_.of(name_ + "." + key);
    const std::string field = key.empty() ? "[" + name_ + "]" : name_ + "." + key;
    throw ConfigError(field + ": " + what, line);
  }

  void allow(const std::set<std::string>& keys) const {
    for (const auto& [k, v] : tree_)
      if (!keys.contains(k)) fail(k, "unknown key");
  }

  std::optional<std::string> text(const std::string& key) const {
    auto v = tree_.get_optional<std::string>(key);
    if (!v) return std::nullopt;
    return trim(*v);
  }

  template <class F>
  auto with(const std::string& key, F&& parse) const -> std::optional<decltype(parse(std::string{}))> {
    auto t = text(key);
    if (!t) return std::nullopt;
    try {
      return parse(*t);
    } catch (const ConfigError& e) {
      fail(key, e.what());
    } catch (const SpecError& e) {
      fail(key, e.what());
    }
  }

  std::optional<double> real(const std::string& key) const {
    return with(key, [](const std::string& s) {
      double x = 0.0;
      if (!parse_real(s, x)) throw ConfigError("expected a number, got '" + s + "'");
      return x;
    });
  }

  std::optional<int> integer(const std::string& key) const {
    return with(key, [](const std::string& s) {
      try {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size()) return v;
      } catch (const std::exception&) {
      }
      throw ConfigError("expected an integer, got '" + s + "'");
    });
  }

  std::optional<bool> boolean(const std::string& key) const {
    return with(key, [](const std::string& s) {
      const std::string l = lower(s);
      if (l == "true" || l == "yes" || l == "1" || l == "on") return true;
      if (l == "false" || l == "no" || l == "0" || l == "off") return false;
      throw ConfigError("expected a boolean, got '" + s + "'");
    });
  }

  std::optional<Complex> complex(const std::string& key) const {
    return with(key, [](const std::string& s) { return parse_complex(s); });
  }

 private:
  std::string name_;
  const pt::ptree& tree_;
  const LineIndex& lines_;
};

int parse_port_token(const std::string& s, int count) {
  if (!s.empty() && std::isdigit(static_cast<unsigned char>(s[0]))) {
    const int p = std::stoi(s);
    if (p < 0 || p >= count) throw ConfigError("port " + s + " out of range");
    return p;
  }
  return parse_port(s, count);
}

PortRef parse_port_ref(const std::string& s, const std::vector<WalkVertex>& vertices) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw ConfigError("expected vertex:port, got '" + s + "'");
  int v = 0;
  try {
    v = std::stoi(s.substr(0, colon));
  } catch (const std::exception&) {
    throw ConfigError("bad vertex in '" + s + "'");
  }
  if (v < 0 || v >= static_cast<int>(vertices.size())) throw ConfigError("no vertex " + std::to_string(v));
  return PortRef{v, parse_port_token(trim(s.substr(colon + 1)), vertices[v].degree)};
}

void apply_corner(const Section& s, VertexParams& p) {
  if (auto r = s.complex("r")) p.r = *r;
  if (auto t = s.complex("t")) p.t = *t;
  if (auto m = s.complex("mirror")) p.mirror = *m;
}

std::vector<double> parse_phase_list(const std::string& s) {
  std::vector<double> out;
  for (const auto& tok : split(s, ',')) out.push_back(parse_phase(tok));
  return out;
}

void apply_device_keys(const Section& s, MultiportSpec& spec) {
  if (auto n = s.integer("n")) {
    if (*n < 1) s.fail("n", "expected a positive port count");
    resize_device(spec, *n);
  }
  VertexParams common = spec.vertices.front();
  const bool any = s.text("r") || s.text("t") || s.text("mirror");
  apply_corner(s, common);
  if (any)
    for (auto& v : spec.vertices) v = common;
  if (auto phases = s.with("edge_phase", parse_phase_list)) {
    if (phases->size() == 1) {
      spec.edge_phases.assign(spec.ports, phases->front());
    } else if (static_cast<int>(phases->size()) == spec.ports) {
      spec.edge_phases = *phases;
    } else {
      s.fail("edge_phase", "expected 1 or " + std::to_string(spec.ports) + " phases");
    }
  }
  if (auto m = s.integer("max_steps")) spec.max_steps = *m;
}

}  // namespace

double parse_phase(const std::string& text) {
  static const std::regex re(R"(^([+-]?)([0-9.eE+-]*?)(\*?pi)?(?:/([0-9]+))?(deg)?$)");
  const std::string s = lower(trim(text));
  std::smatch m;
  if (!std::regex_match(s, m, re)) throw ConfigError("bad phase '" + text + "'");
  double coef = 1.0;
  if (m[2].length() > 0) {
    if (!parse_real(m[2].str(), coef)) throw ConfigError("bad phase '" + text + "'");
  } else if (!m[3].matched) {
    throw ConfigError("bad phase '" + text + "'");
  }
  if (m[3].matched && m[5].matched) throw ConfigError("phase '" + text + "' mixes pi and deg");
  double v = (m[1].str() == "-" ? -coef : coef);
  if (m[3].matched) v *= std::numbers::pi;
  if (m[4].matched) v /= std::stod(m[4].str());
  if (m[5].matched) v *= std::numbers::pi / 180.0;
  return v;
}

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  s = lower(s);
  if (s.empty()) throw ConfigError("empty complex number");
  if (const auto at = s.find('@'); at != std::string::npos) {
    double mag = 0.0;
    if (!parse_real(s.substr(0, at), mag)) throw ConfigError("bad magnitude in '" + text + "'");
    return std::polar(mag, parse_phase(s.substr(at + 1)));
  }
  double re = 0.0;
  if (s.back() != 'i') {
    if (!parse_real(s, re)) throw ConfigError("bad complex number '" + text + "'");
    return {re, 0.0};
  }
  // Split at the last sign that is not part of an exponent.
  std::string body = s.substr(0, s.size() - 1);
  size_t cut = std::string::npos;
  for (size_t k = body.size(); k-- > 0;) {
    if ((body[k] == '+' || body[k] == '-') && (k == 0 || (body[k - 1] != 'e'))) {
      cut = k;
      break;
    }
  }
  std::string real_part;
  std::string imag_part = body;
  if (cut != std::string::npos && cut > 0) {
    real_part = body.substr(0, cut);
    imag_part = body.substr(cut);
  }
  double im = 1.0;
  if (imag_part.empty() || imag_part == "+") {
    im = 1.0;
  } else if (imag_part == "-") {
    im = -1.0;
  } else {
    if (imag_part.back() == '*') imag_part.pop_back();
    if (!parse_real(imag_part, im)) throw ConfigError("bad imaginary part in '" + text + "'");
  }
  if (!real_part.empty() && !parse_real(real_part, re)) throw ConfigError("bad real part in '" + text + "'");
  return {re, im};
}

UnitaryMatrix parse_matrix(const std::string& text, int degree) {
  if (lower(trim(text)) == "grover") {
    UnitaryMatrix g(degree);
    for (int r = 0; r < degree; ++r)
      for (int c = 0; c < degree; ++c) g(r, c) = Complex((r == c ? 2.0 - degree : 2.0) / degree, 0.0);
    return g;
  }
  const auto rows = split(text, ';');
  if (static_cast<int>(rows.size()) != degree)
    throw ConfigError("expected " + std::to_string(degree) + " matrix rows, got " + std::to_string(rows.size()));
  UnitaryMatrix m(degree);
  for (int r = 0; r < degree; ++r) {
    const auto cells = split(rows[r], ',');
    if (static_cast<int>(cells.size()) != degree)
      throw ConfigError("matrix row " + std::to_string(r) + " has " + std::to_string(cells.size()) + " entries");
    for (int c = 0; c < degree; ++c) m(r, c) = parse_complex(cells[c]);
  }
  return m;
}

NumericMode parse_mode(const std::string& text) {
  const std::string l = lower(trim(text));
  if (l == "exact") return NumericMode::Exact;
  if (l == "float" || l == "floating") return NumericMode::Float;
  throw ConfigError("numeric mode must be 'exact' or 'float', got '" + text + "'");
}

OutputFormat parse_format(const std::string& text) {
  const std::string l = lower(trim(text));
  if (l == "json") return OutputFormat::Json;
  if (l == "csv") return OutputFormat::Csv;
  throw ConfigError("output format must be 'json' or 'csv', got '" + text + "'");
}

NumericMode mode_from_env() {
  const char* v = std::getenv(kModeEnvVar);
  if (v == nullptr || *v == '\0') return NumericMode::Float;
  try {
    return parse_mode(v);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string(kModeEnvVar) + ": " + e.what());
  }
}

void resize_device(MultiportSpec& spec, int ports) {
  const VertexParams first = spec.vertices.empty() ? VertexParams{} : spec.vertices.front();
  const double phase = spec.edge_phases.empty() ? 0.0 : spec.edge_phases.front();
  spec.ports = ports;
  spec.vertices.assign(ports, first);
  spec.edge_phases.assign(ports, phase);
}

RunConfig parse_config(const std::string& text, RunConfig cfg) {
  pt::ptree tree;
  {
    std::istringstream in(text);
    try {
      pt::ini_parser::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
      throw ConfigError(e.message(), static_cast<int>(e.line()));
    }
  }
  const LineIndex lines(text);

  std::map<int, const pt::ptree*> corners, vertices, edges;
  std::map<std::string, const pt::ptree*> leads;
  std::map<std::pair<int, int>, const pt::ptree*> schedule;
  std::map<std::string, const pt::ptree*> plain;
  for (const auto& [name, sub] : tree) {
    const auto parts = split(name, '.');
    auto index = [&](const std::string& s) {
      try {
        size_t used = 0;
        const int v = std::stoi(s, &used);
        if (used == s.size() && v >= 0) return v;
      } catch (const std::exception&) {
      }
      throw ConfigError("[" + name + "]: bad index '" + s + "'", lines.of("[" + name + "]"));
    };
    if (sub.empty() && !sub.data().empty()) throw ConfigError("key '" + name + "' outside any section", lines.of("." + name));
    if (parts.size() == 1) {
      static const std::set<std::string> known{"run", "device", "bell", "family", "walk", "feasibility"};
      if (!known.contains(parts[0])) throw ConfigError("unknown section [" + name + "]", lines.of("[" + name + "]"));
      plain[parts[0]] = &sub;
    } else if (parts[0] == "corner" && parts.size() == 2) {
      int k = 0;
      if (!parts[1].empty() && std::isalpha(static_cast<unsigned char>(parts[1][0])))
        k = std::toupper(static_cast<unsigned char>(parts[1][0])) - 'A';
      else
        k = index(parts[1]);
      corners[k] = &sub;
    } else if (parts[0] == "vertex" && parts.size() == 2) {
      vertices[index(parts[1])] = &sub;
    } else if (parts[0] == "edge" && parts.size() == 2) {
      edges[index(parts[1])] = &sub;
    } else if (parts[0] == "lead" && parts.size() == 2) {
      leads[parts[1]] = &sub;
    } else if (parts[0] == "schedule" && parts.size() == 3) {
      schedule[{index(parts[1]), index(parts[2])}] = &sub;
    } else {
      throw ConfigError("unknown section [" + name + "]", lines.of("[" + name + "]"));
    }
  }
  auto section = [&](const std::string& name, const pt::ptree* t) { return Section(name, *t, lines); };

  if (plain.contains("run")) {
    const Section s = section("run", plain["run"]);
    s.allow({"mode", "format", "input", "output", "steps", "encounters", "tol"});
    if (auto v = s.with("mode", parse_mode)) cfg.mode = *v;
    if (auto v = s.with("format", parse_format)) cfg.format = *v;
    if (auto v = s.text("input")) cfg.input = *v;
    if (auto v = s.text("output")) cfg.output = *v;
    if (auto v = s.integer("steps")) cfg.steps = *v;
    if (auto v = s.integer("encounters")) cfg.encounters = *v;
    if (auto v = s.real("tol")) cfg.tol = *v;
  }
  if (plain.contains("device")) {
    const Section s = section("device", plain["device"]);
    s.allow({"n", "r", "t", "mirror", "edge_phase", "max_steps"});
    apply_device_keys(s, cfg.device);
  }
  for (const auto& [k, t] : corners) {
    const Section s = section("corner." + std::to_string(k), t);
    if (k < 0 || k >= cfg.device.ports) s.fail("", "corner outside the device");
    s.allow({"r", "t", "mirror"});
    apply_corner(s, cfg.device.vertices[k]);
  }
  if (plain.contains("bell")) {
    const Section s = section("bell", plain["bell"]);
    s.allow({"condition", "herald"});
    if (auto v = s.text("condition")) {
      const std::string l = lower(*v);
      if (l == "s" || l == "same") cfg.condition.kind = Herald::Same;
      else if (l == "o" || l == "opposite") cfg.condition.kind = Herald::Opposite;
      else s.fail("condition", "expected 's' or 'o'");
    }
    if (auto v = s.with("herald", [](const std::string& x) { return parse_port(x, 3); })) cfg.condition.port = *v;
  }
  if (plain.contains("family")) {
    const Section s = section("family", plain["family"]);
    s.allow({"phi_a_start", "phi_a_stop", "count", "phi"});
    if (auto v = s.with("phi_a_start", parse_phase)) cfg.phi_a_start = *v;
    if (auto v = s.with("phi_a_stop", parse_phase)) cfg.phi_a_stop = *v;
    if (auto v = s.integer("count")) cfg.phi_a_count = *v;
    if (auto v = s.with("phi", parse_phase)) cfg.phi = *v;
  }
  bool allow_disconnected = false;
  if (plain.contains("walk")) {
    const Section s = section("walk", plain["walk"]);
    s.allow({"input", "steps", "vertex_kind", "allow_disconnected"});
    if (auto v = s.text("input")) cfg.input = *v;
    if (auto v = s.integer("steps")) cfg.steps = *v;
    if (auto v = s.text("vertex_kind")) {
      const std::string l = lower(*v);
      if (l == "physical") cfg.default_vertex = VertexKind::Physical;
      else if (l == "coin" || l == "ideal") cfg.default_vertex = VertexKind::IdealCoin;
      else s.fail("vertex_kind", "expected 'physical' or 'coin'");
    }
    if (auto v = s.boolean("allow_disconnected")) allow_disconnected = *v;
  }
  if (!vertices.empty()) {
    GraphSpec g;
    g.allow_disconnected = allow_disconnected;
    int expect = 0;
    for (const auto& [k, t] : vertices) {
      const Section s = section("vertex." + std::to_string(k), t);
      if (k != expect++) s.fail("", "vertices must be numbered 0, 1, 2, ... without gaps");
      s.allow({"name", "kind", "degree", "coin", "r", "t", "mirror", "edge_phase", "max_steps"});
      WalkVertex v;
      v.name = s.text("name").value_or("v" + std::to_string(k));
      v.kind = cfg.default_vertex;
      if (auto kind = s.text("kind")) {
        const std::string l = lower(*kind);
        if (l == "physical") v.kind = VertexKind::Physical;
        else if (l == "coin" || l == "ideal") v.kind = VertexKind::IdealCoin;
        else s.fail("kind", "expected 'physical' or 'coin'");
      }
      v.degree = s.integer("degree").value_or(3);
      if (v.kind == VertexKind::IdealCoin) {
        if (s.text("r") || s.text("t") || s.text("mirror") || s.text("edge_phase"))
          s.fail("", "beam-splitter keys given for a coin vertex");
        const int degree = v.degree;
        if (auto m = s.with("coin", [degree](const std::string& x) { return parse_matrix(x, degree); })) v.coin = *m;
      } else {
        if (s.text("coin")) s.fail("coin", "coin given for a physical vertex");
        v.device = MultiportSpec::regular(std::max(v.degree, 3));
        if (v.degree < 3) s.fail("degree", "a physical vertex needs at least 3 ports");
        apply_device_keys(s, v.device);
      }
      g.vertices.push_back(std::move(v));
    }
    for (const auto& [k, t] : edges) {
      const Section s = section("edge." + std::to_string(k), t);
      s.allow({"a", "b", "phase"});
      WalkEdge e;
      auto a = s.with("a", [&](const std::string& x) { return parse_port_ref(x, g.vertices); });
      auto b = s.with("b", [&](const std::string& x) { return parse_port_ref(x, g.vertices); });
      if (!a || !b) s.fail("", "edge needs both 'a' and 'b'");
      e.a = *a;
      e.b = *b;
      e.phase = s.with("phase", parse_phase).value_or(0.0);
      g.edges.push_back(e);
    }
    for (const auto& [name, t] : leads) {
      const Section s = section("lead." + name, t);
      s.allow({"at"});
      auto at = s.with("at", [&](const std::string& x) { return parse_port_ref(x, g.vertices); });
      if (!at) s.fail("", "lead needs 'at'");
      g.leads.push_back(WalkLead{name, *at});
    }
    try {
      g.validate();
    } catch (const SpecError& e) {
      throw ConfigError(std::string("graph: ") + e.what(), lines.of("[vertex.0]"));
    }
    cfg.graph = std::move(g);
  } else if (!edges.empty() || !leads.empty()) {
    throw ConfigError("edges or leads given without vertices",
                      lines.of("[" + std::string(edges.empty() ? "lead." + leads.begin()->first
                                                                : "edge." + std::to_string(edges.begin()->first)) +
                               "]"));
  }
  for (const auto& [key, t] : schedule) {
    const Section s = section("schedule." + std::to_string(key.first) + "." + std::to_string(key.second), t);
    s.allow({"coin", "r", "t", "mirror"});
    if (key.first < 1) s.fail("", "schedule steps start at 1");
    VertexOverride o;
    if (s.text("coin")) {
      int degree = cfg.device.ports;
      if (cfg.graph) {
        if (key.second >= static_cast<int>(cfg.graph->vertices.size())) s.fail("", "no such vertex");
        degree = cfg.graph->vertices[key.second].degree;
      }
      o.coin = s.with("coin", [degree](const std::string& x) { return parse_matrix(x, degree); });
    }
    if (s.text("r") || s.text("t") || s.text("mirror")) {
      VertexParams p;
      apply_corner(s, p);
      o.corners.push_back(p);
    }
    cfg.schedule.set(key.first, key.second, std::move(o));
  }
  if (plain.contains("feasibility")) {
    const Section s = section("feasibility", plain["feasibility"]);
    s.allow({"d", "index", "pulse_duration", "bandwidth", "detector_time", "tau_coh"});
    if (auto v = s.real("d")) cfg.timing.d = *v;
    if (auto v = s.real("index")) cfg.timing.refractive_index = *v;
    if (auto v = s.real("pulse_duration")) cfg.timing.pulse_duration = *v;
    if (auto v = s.real("bandwidth")) cfg.timing.bandwidth = *v;
    if (auto v = s.real("detector_time")) cfg.timing.detector_time = *v;
    if (auto v = s.real("tau_coh")) cfg.tau_coh = *v;
  }
  return cfg;
}

RunConfig load_config(const std::string& path, RunConfig base) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), std::move(base));
}

}  // namespace multiport::cli
