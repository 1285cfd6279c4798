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

// Acceptance checks 1-12. Each prints one PASS/FAIL line; `--only k` runs a
// single check. The exit status is non-zero if any selected check fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "multiport/bell/bell.hpp"
#include "multiport/core/eigen.hpp"
#include "multiport/device/closed_form.hpp"
#include "multiport/device/device.hpp"
#include "multiport/feasibility/timing.hpp"
#include "multiport/walk/network.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

namespace {

using namespace multiport;
using E = ExactComplex;

// Collects failed conditions for one criterion.
class Check {
 public:
  void require(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool ok() const { return failures_.empty(); }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& f : failures_) os << " [failed: " << f << "]";
    for (const auto& n : notes_) os << " (" << n << ")";
    return os.str();
  }

 private:
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", x);
  return buf;
}

E imag(long long num, long long den) { return E(Surd(0), Surd::fraction(num, den)); }

double max_dev(const UnitaryMatrix& a, const UnitaryMatrix& b) {
  double d = 0.0;
  for (int r = 0; r < a.dim(); ++r)
    for (int c = 0; c < a.dim(); ++c) d = std::max(d, std::abs(a(r, c) - b(r, c)));
  return d;
}

UnitaryMatrix reference_u() {
  UnitaryMatrix u(3);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) u(r, c) = Complex(0.0, -1.0 / 3.0) * (r == c ? 1.0 : -2.0);
  return u;
}

SquareMatrix<E> exact_u() { return steady_state_resolvent<E>(MultiportSpec::regular(3)); }

BellLabel sym(const char* s) { return parse_bell_symbol(s); }

void table_one(Check& c) {
  const auto rec = exit_record<E>(MultiportSpec::regular(3), 0, 10);
  const std::vector<std::array<E, 3>> want{
      {E(), imag(1, 2), imag(1, 2)},
      {imag(-1, 2), imag(1, 4), imag(1, 4)},
      {imag(1, 4), imag(-1, 8), imag(-1, 8)},
      {imag(-1, 8), imag(1, 16), imag(1, 16)},
      {imag(1, 16), imag(-1, 32), imag(-1, 32)},
  };
  const double cumulative[] = {0.5, 0.875, 0.96875, 0.99219, 0.99805};
  for (int k = 0; k < 5; ++k) {
    const int n = 2 * (k + 1);
    const auto& row = rec.at(n);
    for (int p = 0; p < 3; ++p) c.require(row.amplitudes[p] == want[k][p], "amplitude N=" + std::to_string(n));
    const double cum = row.cumulative_probability.to_double();
    if (k < 3)
      c.require(cum == cumulative[k], "cumulative N=" + std::to_string(n));
    else
      c.require(std::round(cum * 1e5) / 1e5 == cumulative[k], "cumulative N=" + std::to_string(n) + " to 5 places");
  }
  for (int n = 1; n <= 9; n += 2)
    for (const auto& a : rec.at(n).amplitudes) c.require(a == E(), "odd N=" + std::to_string(n) + " is zero");
  c.note("cumulative N=10 = " + fmt(rec.at(10).cumulative_probability.to_double()));
}

void steady_state_u(Check& c) {
  const MultiportSpec spec = MultiportSpec::regular(3);
  const SteadyStateResult r = steady_state(spec, 1e-12);
  const double dev = max_dev(r.matrix, reference_u());
  c.require(r.converged, "converged at tol 1e-12");
  c.require(dev < 1e-9, "max deviation < 1e-9");
  c.note("deviation " + fmt(dev) + ", residual " + fmt(r.residual) + " after " + std::to_string(r.steps_used) + " steps");
  MultiportSpec limited = spec;
  limited.max_steps = 40;
  const SteadyStateResult r40 = steady_state(limited, 1e-12);
  c.require(r40.residual < 1e-12, "residual < 1e-12 within 40 steps");
  c.note("residual after 40 steps " + fmt(r40.residual));
}

void closed_form(Check& c) {
  const SteadyStateResult r = steady_state(MultiportSpec::regular(3), 1e-12);
  const double dev = max_dev(symmetric_unitary(-std::numbers::pi / 2, 0.0), r.matrix);
  c.require(dev < 1e-12, "symmetric_unitary(-pi/2, 0) equals steady state");
  std::mt19937 rng(2024);
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) worst = std::max(worst, unitarity_defect(symmetric_unitary(ang(rng), ang(rng))));
  c.require(worst < 1e-12, "unitarity over 100 samples");
  c.note("deviation " + fmt(dev) + ", worst defect " + fmt(worst));
}

void eigenstructure(Check& c) {
  const UnitaryMatrix u = steady_state(MultiportSpec::regular(3), 1e-12).matrix;
  const auto spaces = group_eigenspaces(eigensystem_small(u));
  bool plus = false;
  bool minus = false;
  for (const auto& s : spaces) {
    if (std::abs(s.value - Complex(0.0, 1.0)) < 1e-9 && s.basis.size() == 1) {
      Complex ov{};
      for (const auto& x : s.basis[0]) ov += x / std::sqrt(3.0);
      plus = std::abs(std::abs(ov) - 1.0) < 1e-9;
    }
    if (std::abs(s.value - Complex(0.0, -1.0)) < 1e-9 && s.basis.size() == 2) minus = true;
  }
  c.require(spaces.size() == 2, "two eigenspaces");
  c.require(plus, "+i on the uniform vector");
  c.require(minus, "two-dimensional -i eigenspace");
  const double sq = max_dev(u * u, UnitaryMatrix::identity(3) * Complex(-1.0, 0.0));
  c.require(sq < 1e-12, "U^2 = -I");
  c.note("|U^2 + I| = " + fmt(sq));
}

void grover(Check& c) {
  const UnitaryMatrix u = steady_state(MultiportSpec::regular(3), 1e-12).matrix;
  const PhaseMatch m = compare_up_to_global_phase(u, grover_coin<Complex>(3), 1e-12);
  c.require(m.match, "match");
  c.require(std::abs(m.phase - Complex(0.0, 1.0)) < 1e-12, "phase i");
  c.require(m.max_dev < 1e-12, "deviation < 1e-12");
  c.note("phase " + fmt(m.phase.real()) + (m.phase.imag() < 0 ? "" : "+") + fmt(m.phase.imag()) + "i, deviation " +
         fmt(m.max_dev));
}

Occupation occ(std::initializer_list<Mode> modes) {
  Occupation o(3);
  for (const auto& m : modes) o.add(m);
  return o;
}

void intermediate(Check& c) {
  constexpr auto H = Polarization::H;
  constexpr auto V = Polarization::V;
  const auto u = exact_u();
  const auto s = intermediate_expansion<E>(sym("Psi+").on(0, 1), u);
  const Surd r2 = Surd::sqrt_of(2);
  // Doubly occupied ports carry the coefficient directly; a Psi+ pair on
  // ports p, q carries coefficient / sqrt2 on each of its two terms. The
  // set is compared up to one common unit-modulus factor g.
  const E g = s.amplitude(occ({{0, H}, {0, V}})) / E(r2 * Surd::fraction(-2, 9));
  c.require(g * g.conj() == E(Surd(1)), "common factor has unit modulus");
  c.require(s.amplitude(occ({{1, H}, {1, V}})) == g * E(r2 * Surd::fraction(-2, 9)), "-2sqrt2/9 on B");
  c.require(s.amplitude(occ({{2, H}, {2, V}})) == g * E(r2 * Surd::fraction(4, 9)), "+4sqrt2/9 on C");
  const auto pair = [&](int p, int q, long long num) {
    const E want = g * E(Surd::fraction(num, 9) / r2);
    return s.amplitude(occ({{p, H}, {q, V}})) == want && s.amplitude(occ({{p, V}, {q, H}})) == want;
  };
  c.require(pair(0, 1, 5), "+5/9 Psi+_AB");
  c.require(pair(0, 2, 2), "+2/9 Psi+_AC");
  c.require(pair(1, 2, 2), "+2/9 Psi+_BC");
  c.note("global factor " + g.str());
  c.require(s.terms().size() == 9, "no other terms");

  const auto out = four_photon_output<E>(sym("Psi+").on(0, 1), sym("Psi+").on(0, 2), u);
  const E scale(Surd::sqrt_of(Rational(3, 2)));  // undo normalisation
  const E x = out.amplitude(occ({{0, H}, {0, H}, {1, V}, {2, V}})) * scale;
  const E y = out.amplitude(occ({{0, H}, {0, V}, {1, V}, {2, H}})) * scale;
  c.require(E(r2) * x == E(Surd::fraction(29, 81)), "29/81");
  c.require(E(r2) * y - x == E(r2 * Surd::fraction(-8, 81)), "-8sqrt2/81");
  c.note("|HV>_A V_B H_C amplitude " + y.str());
}

void table_two(Check& c) {
  const auto rows = full_truth_table<E>(exact_u());
  const char* expected[16][4] = {
      {"Psi+", "Psi+", "Phi+", "Psi+"}, {"Psi+", "Psi-", "Phi-", "Psi-"}, {"Psi-", "Psi+", "Phi-", "Psi-"},
      {"Psi-", "Psi-", "Phi+", "Psi+"}, {"Phi+", "Phi+", "Phi+", "Psi+"}, {"Phi+", "Phi-", "Phi-", "Psi-"},
      {"Phi-", "Phi+", "Phi-", "Psi-"}, {"Phi-", "Phi-", "Phi+", "Psi+"}, {"Psi+", "Phi+", "Psi+", "Phi+"},
      {"Psi+", "Phi-", "Psi-", "Phi-"}, {"Psi-", "Phi+", "Psi-", "Phi-"}, {"Psi-", "Phi-", "Psi+", "Phi+"},
      {"Phi+", "Psi+", "Psi+", "Phi+"}, {"Phi+", "Psi-", "Psi-", "Phi-"}, {"Phi-", "Psi+", "Psi-", "Phi-"},
      {"Phi-", "Psi-", "Psi+", "Phi+"},
  };
  c.require(rows.size() == 16, "16 rows");
  int matched = 0;
  for (const auto& e : expected)
    for (const auto& r : rows)
      if (r.input.symbol() == e[0] && r.control.symbol() == e[1] && r.out_same.symbol() == e[2] &&
          r.out_opposite.symbol() == e[3])
        ++matched;
  c.require(matched == 16, "all rows match");
  c.note(std::to_string(matched) + "/16 rows");

  const char* psi_plus[4][2] = {{"Psi+", "Phi+"}, {"Psi-", "Phi-"}, {"Phi+", "Psi+"}, {"Phi-", "Psi-"}};
  int sub = 0;
  for (const auto& e : psi_plus)
    for (const auto& r : rows)
      if (r.input.symbol() == "Psi+" && r.control.symbol() == e[0] && r.out_same.symbol() == e[1]) ++sub;
  c.require(sub == 4, "Psi+ input restriction");
  c.require(cnot_table<E>(exact_u()).is_cnot, "CNOT");
}

void klein(Check& c) {
  const auto u = exact_u();
  const GroupTable s = group_table<E>({Herald::Same, 0}, u);
  const GroupReport& r = s.report;
  c.require(r.closure, "closure");
  c.require(r.commutative, "commutative");
  c.require(r.identity.has_value(), "unique identity");
  c.require(r.self_inverse, "self-inverse");
  c.require(r.klein, "Z2 + Z2");
  const GroupTable o = group_table<E>({Herald::Opposite, 0}, u);
  const GroupTable w = swap_families(s);
  bool relabel = true;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      auto find = [&](const std::string& name) {
        for (int k = 0; k < 4; ++k)
          if (o.elements[k].symbol() == name) return k;
        return -1;
      };
      const int ia = find(w.elements[a].symbol());
      const int ib = find(w.elements[b].symbol());
      if (ia < 0 || ib < 0 || !w.product[a][b] || !o.product[ia][ib] ||
          w.elements[*w.product[a][b]].symbol() != o.elements[*o.product[ia][ib]].symbol())
        relabel = false;
    }
  c.require(relabel, "o table is the Psi/Phi relabelling");
  if (r.identity) c.note("identity " + s.elements[*r.identity].symbol());
}

void success_probability(Check& c) {
  const auto split = herald_split<E>(sym("Psi+").on(0, 1), sym("Psi+").on(0, 2), exact_u());
  const double po = split.opposite.to_double();
  c.note("s = " + split.same.str() + " = " + fmt(split.same.to_double()));
  c.note("o = " + split.opposite.str() + " = " + fmt(po));
  c.note("rejected = " + split.rejected.str());
  c.require(split.same + split.opposite + split.rejected == Surd(1), "probabilities sum to 1");
  c.require(po >= 0.01 && po <= 0.06, "o-branch probability in [0.01, 0.06]");
}

void conservation(Check& c) {
  std::mt19937 rng(1234);
  double worst_step = 0.0;
  double worst_unitary_margin = -1.0;
  int symmetric_failures = 0;
  int unitary_failures = 0;
  for (int k = 0; k < 200; ++k) {
    const int n = 3 + k % 3;
    const bool identical = k % 4 == 0;
    MultiportSpec spec = testing_support::random_spec(rng, n, identical);
    spec.max_steps = 5000;
    const auto rec = exit_record<Complex>(spec, k % n, 60);
    for (const auto& row : rec.rows)
      worst_step = std::max(worst_step, std::abs(row.cumulative_probability + row.internal_probability - 1.0));
    const SteadyStateResult r = steady_state(spec, 1e-12);
    const double defect = unitarity_defect(r.matrix);
    const double bound = std::max(r.residual, 1e-9);
    worst_unitary_margin = std::max(worst_unitary_margin, defect - bound);
    if (defect > bound) ++unitary_failures;
    if (identical) {
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          if (std::abs(r.matrix((a + 1) % n, (b + 1) % n) - r.matrix(a, b)) > 1e-9 ||
              std::abs(r.matrix((n - a) % n, (n - b) % n) - r.matrix(a, b)) > 1e-9)
            ++symmetric_failures;
    }
  }
  c.require(worst_step < 1e-12, "per-step conservation to 1e-12");
  c.require(unitary_failures == 0, "steady state unitary to max(residual, 1e-9)");
  c.require(symmetric_failures == 0, "dihedral symmetry");
  c.note("worst step error " + fmt(worst_step) + ", unitarity failures " + std::to_string(unitary_failures));
}

void cross_module(Check& c) {
  std::mt19937 rng(77);
  double worst_single = 0.0;
  for (int n : {3, 4, 5}) {
    const MultiportSpec s = testing_support::random_spec(rng, n);
    WalkVertex v;
    v.kind = VertexKind::Physical;
    v.degree = n;
    v.device = s;
    const auto engine = build_network<Complex>(GraphSpec::single_vertex(v));
    for (int in = 0; in < n; ++in) {
      const auto walk = run_walk(engine, in, 20);
      const auto rec = exit_record<Complex>(s, in, 20);
      for (int step = 1; step <= 20; ++step)
        for (int p = 0; p < n; ++p)
          worst_single =
              std::max(worst_single, std::abs(walk.frames[step - 1].exit_amplitudes[p] - rec.at(step).amplitudes[p]));
    }
  }
  // Exact single vertex: identical amplitudes.
  {
    WalkVertex v;
    v.kind = VertexKind::Physical;
    v.device = MultiportSpec::regular(3);
    const auto walk = run_walk(build_network<E>(GraphSpec::single_vertex(v)), 0, 20);
    const auto rec = exit_record<E>(v.device, 0, 20);
    bool same = true;
    for (int step = 1; step <= 20; ++step) same = same && walk.frames[step - 1].exit_amplitudes == rec.at(step).amplitudes;
    c.require(same, "exact single vertex equals exit_record");
  }
  c.require(worst_single < 1e-12, "single vertex equals exit_record");

  double worst_pair = 0.0;
  for (int trial = 0; trial < 3; ++trial) {
    const MultiportSpec s0 = testing_support::random_spec(rng, 3);
    const MultiportSpec s1 = testing_support::random_spec(rng, 4);
    const double phase = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    GraphSpec g;
    WalkVertex a;
    a.kind = VertexKind::Physical;
    a.degree = 3;
    a.device = s0;
    WalkVertex b = a;
    b.degree = 4;
    b.device = s1;
    g.vertices = {a, b};
    g.edges.push_back(WalkEdge{{0, 1}, {1, 3}, phase});
    g.leads = {{"a0", {0, 0}}, {"a2", {0, 2}}, {"b0", {1, 0}}, {"b1", {1, 1}}, {"b2", {1, 2}}};
    const auto engine = build_network<Complex>(g);
    oracle::ArmNetwork net({testing_support::to_polygon(s0), testing_support::to_polygon(s1)});
    net.connect({0, 1}, {1, 3}, phase);
    for (const auto& l : g.leads) net.add_lead({l.at.vertex, l.at.port});
    for (int in = 0; in < 5; ++in) {
      const auto want = net.run(in, 40);
      const auto got = run_walk(engine, in, 40);
      for (int step = 0; step < 40; ++step)
        for (int p = 0; p < 5; ++p)
          worst_pair = std::max(worst_pair, std::abs(got.frames[step].exit_amplitudes[p] - want[step][p]));
    }
  }
  c.require(worst_pair < 1e-12, "two-vertex network equals dense operator powers");
  c.note("single " + fmt(worst_single) + ", pair " + fmt(worst_pair));
}

bool within(double x, double target, double rel) { return std::abs(x - target) <= rel * target; }

void feasibility(Check& c) {
  TimingInputs in;
  in.d = 1e-4;
  const TimingBudget b = assess(in);
  c.require(within(b.T_c, 3.3e-12, 0.02), "T_c = 3.3 ps within 2%");
  c.require(within(b.max_sampling_rate, 0.3e12, 0.02), "rate = 0.3 THz within 2%");
  in.pulse_duration = 100e-12;
  const TimingBudget p = assess(in);
  c.require(p.bandwidth && within(*p.bandwidth, 1e9, 0.25), "bandwidth within 25% of 1 GHz");
  c.require(within(p.l_coh, 0.30, 0.30), "l_coh within 30% of 30 cm");
  c.require(coherence_budget(1e-9, 3.3e-12).steps == 303, "coherence budget 303");
  c.note("T_c " + fmt(b.T_c) + " s, rate " + fmt(b.max_sampling_rate) + " Hz, bandwidth " + fmt(p.bandwidth.value_or(0)) +
         " Hz, l_coh " + fmt(p.l_coh) + " m");
}

struct Criterion {
  const char* title;
  std::function<void(Check&)> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> all{
      {"exit table, exact", table_one},
      {"steady-state transition matrix", steady_state_u},
      {"closed-form family", closed_form},
      {"eigenstructure", eigenstructure},
      {"Grover equivalence", grover},
      {"two-photon intermediate state", intermediate},
      {"Bell truth table", table_two},
      {"Klein group", klein},
      {"heralded success probability", success_probability},
      {"conservation properties", conservation},
      {"walk versus device", cross_module},
      {"timing numbers", feasibility},
  };
  int only = 0;
  for (int k = 1; k < argc; ++k) {
    const std::string a = argv[k];
    if (a == "--only" && k + 1 < argc) {
      only = std::atoi(argv[++k]);
    } else {
      std::fprintf(stderr, "usage: %s [--only K]\n", argv[0]);
      return 2;
    }
  }
  if (only < 0 || only > static_cast<int>(all.size())) {
    std::fprintf(stderr, "no criterion %d\n", only);
    return 2;
  }
  int failed = 0;
  for (size_t k = 0; k < all.size(); ++k) {
    if (only != 0 && static_cast<int>(k) + 1 != only) continue;
    Check c;
    try {
      all[k].run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    std::printf("criterion %2zu %s: %s%s\n", k + 1, c.ok() ? "PASS" : "FAIL", all[k].title, c.summary().c_str());
    if (!c.ok()) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
