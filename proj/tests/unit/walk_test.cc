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
#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "multiport/core/errors.hpp"
#include "multiport/device/closed_form.hpp"
#include "multiport/device/device.hpp"
#include "multiport/walk/network.hpp"
#include "oracles.hpp"
#include "random_specs.hpp"

namespace multiport {
namespace {

using E = ExactComplex;

WalkVertex coin_vertex(int degree = 3) {
  WalkVertex v;
  v.kind = VertexKind::IdealCoin;
  v.degree = degree;
  return v;
}

WalkVertex physical_vertex(const MultiportSpec& s) {
  WalkVertex v;
  v.kind = VertexKind::Physical;
  v.degree = s.ports;
  v.device = s;
  return v;
}

// Two degree-3 vertices joined 0.2 <-> 1.0; leads on the remaining ports.
GraphSpec pair_graph(const WalkVertex& a, const WalkVertex& b, double phase) {
  GraphSpec g;
  g.vertices = {a, b};
  g.edges.push_back(WalkEdge{{0, 2}, {1, 0}, phase});
  g.leads = {{"w", {0, 0}}, {"n", {0, 1}}, {"e", {1, 1}}, {"s", {1, 2}}};
  return g;
}

UnitaryMatrix random_unitary3(std::mt19937& rng) {
  // Product of a Grover coin with random diagonal phases on both sides.
  std::uniform_real_distribution<double> ang(-std::numbers::pi, std::numbers::pi);
  UnitaryMatrix g = grover_coin<Complex>(3);
  UnitaryMatrix out(3);
  std::array<double, 3> a{ang(rng), ang(rng), ang(rng)};
  std::array<double, 3> b{ang(rng), ang(rng), ang(rng)};
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) out(r, c) = std::polar(1.0, a[r]) * g(r, c) * std::polar(1.0, b[c]);
  return out;
}

// Arrival amplitudes per (vertex, port); each step scatters, records lead
// departures, and moves edge departures to the far end.
std::vector<std::vector<Complex>> coin_oracle(const GraphSpec& g, int input, int steps,
                                              const std::map<int, std::map<int, UnitaryMatrix>>& sched = {}) {
  const int nv = static_cast<int>(g.vertices.size());
  std::vector<std::vector<Complex>> arrive(nv);
  for (int v = 0; v < nv; ++v) arrive[v].assign(g.vertices[v].degree, Complex{});
  arrive[g.leads[input].at.vertex][g.leads[input].at.port] = 1.0;
  std::vector<std::vector<Complex>> out;
  for (int s = 1; s <= steps; ++s) {
    std::vector<std::vector<Complex>> depart(nv);
    for (int v = 0; v < nv; ++v) {
      UnitaryMatrix c = g.vertices[v].coin.value_or(grover_coin<Complex>(g.vertices[v].degree));
      if (auto it = sched.find(s); it != sched.end())
        if (auto jt = it->second.find(v); jt != it->second.end()) c = jt->second;
      depart[v] = c.apply(arrive[v]);
    }
    std::vector<Complex> exits;
    for (const auto& l : g.leads) exits.push_back(depart[l.at.vertex][l.at.port]);
    out.push_back(exits);
    for (auto& a : arrive) std::fill(a.begin(), a.end(), Complex{});
    for (const auto& e : g.edges) {
      const Complex f = std::polar(1.0, e.phase);
      arrive[e.b.vertex][e.b.port] += f * depart[e.a.vertex][e.a.port];
      arrive[e.a.vertex][e.a.port] += f * depart[e.b.vertex][e.b.port];
    }
  }
  return out;
}

TEST(Walk, PhysicalSingleVertexEqualsExitRecord) {
  std::mt19937 rng(11);
  for (int n : {3, 4, 5}) {
    const MultiportSpec s = testing_support::random_spec(rng, n);
    const auto engine = build_network<Complex>(GraphSpec::single_vertex(physical_vertex(s)));
    for (int in = 0; in < n; ++in) {
      const auto series = run_walk(engine, in, 20);
      const auto record = exit_record<Complex>(s, in, 20);
      for (int step = 1; step <= 20; ++step)
        for (int k = 0; k < n; ++k)
          EXPECT_NEAR(std::abs(series.frames[step - 1].exit_amplitudes[k] - record.at(step).amplitudes[k]), 0.0, 1e-12);
    }
  }
}

TEST(Walk, ExactSingleVertexEqualsExitRecord) {
  const MultiportSpec s = MultiportSpec::regular(3);
  const auto engine = build_network<E>(GraphSpec::single_vertex(physical_vertex(s)));
  const auto series = run_walk(engine, 0, 12);
  const auto record = exit_record<E>(s, 0, 12);
  for (int step = 1; step <= 12; ++step) {
    EXPECT_EQ(series.frames[step - 1].exit_amplitudes, record.at(step).amplitudes);
    EXPECT_EQ(series.frames[step - 1].total, Surd(1));
  }
}

TEST(Walk, IdealCoinScattersOnce) {
  const auto engine = build_network<E>(GraphSpec::single_vertex(coin_vertex(3)));
  const auto series = run_walk(engine, 1, 3);
  const auto g = grover_coin<E>(3);
  for (int k = 0; k < 3; ++k) EXPECT_EQ(series.frames[0].exit_amplitudes[k], g(k, 1));
  EXPECT_EQ(series.frames[0].cumulative_exit[1], Surd::fraction(1, 9));
  EXPECT_EQ(series.frames[0].internal, Surd(0));
  for (const auto& a : series.frames[2].exit_amplitudes) EXPECT_EQ(a, E());
}

TEST(Walk, GroverCoinIsAnInvolution) {
  for (int n = 2; n <= 6; ++n) {
    const auto g = grover_coin<E>(n);
    EXPECT_EQ(g * g, SquareMatrix<E>::identity(n)) << n;
  }
}

TEST(Walk, TriangleStructure) {
  const MultiportSpec s = MultiportSpec::regular(3);
  GraphSpec g;
  g.vertices = {physical_vertex(s), physical_vertex(s), physical_vertex(s)};
  g.edges = {{{0, 1}, {1, 2}, 0.0}, {{1, 1}, {2, 2}, 0.0}, {{2, 1}, {0, 2}, 0.0}};
  g.leads = {{"a", {0, 0}}, {"b", {1, 0}}, {"c", {2, 0}}};
  const auto engine = build_network<Complex>(g);
  EXPECT_EQ(engine.graph().leads().size(), 3u);
  for (int e = 0; e < 3; ++e) EXPECT_EQ(engine.edge_modes(e).second, engine.edge_modes(e).first + 1);
  EXPECT_EQ(engine.vertex_nodes(1).size(), 3u);
  const auto series = run_walk(engine, 0, 200);
  const auto& last = series.frames.back();
  EXPECT_NEAR(last.total, 1.0, 1e-9);
  // Threefold rotation maps lead a to b to c.
  const auto sb = run_walk(engine, 1, 40);
  for (int step = 0; step < 40; ++step)
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(std::abs(series.frames[step].exit_amplitudes[k] - sb.frames[step].exit_amplitudes[(k + 1) % 3]), 0.0,
                  1e-12);
}

TEST(Walk, TwoPhysicalVerticesMatchDenseOperator) {
  std::mt19937 rng(5);
  for (int trial = 0; trial < 5; ++trial) {
    const MultiportSpec s0 = testing_support::random_spec(rng, 3);
    const MultiportSpec s1 = testing_support::random_spec(rng, 3);
    const double phase = std::uniform_real_distribution<double>(-3.0, 3.0)(rng);
    const auto engine = build_network<Complex>(pair_graph(physical_vertex(s0), physical_vertex(s1), phase));

    oracle::ArmNetwork net({testing_support::to_polygon(s0), testing_support::to_polygon(s1)});
    net.connect({0, 2}, {1, 0}, phase);
    for (auto [v, c] : std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {1, 1}, {1, 2}}) net.add_lead({v, c});

    for (int in = 0; in < 4; ++in) {
      const auto want = net.run(in, 30);
      const auto got = run_walk(engine, in, 30);
      for (int step = 0; step < 30; ++step)
        for (int k = 0; k < 4; ++k)
          EXPECT_NEAR(std::abs(got.frames[step].exit_amplitudes[k] - want[step][k]), 0.0, 1e-12);
    }
  }
}

TEST(Walk, CoinGraphMatchesOracle) {
  std::mt19937 rng(3);
  WalkVertex a = coin_vertex();
  WalkVertex b = coin_vertex();
  b.coin = random_unitary3(rng);
  const GraphSpec g = pair_graph(a, b, 0.7);
  const auto engine = build_network<Complex>(g);
  for (int in = 0; in < 4; ++in) {
    const auto want = coin_oracle(g, in, 8);
    const auto got = run_walk(engine, in, 8);
    for (int step = 0; step < 8; ++step)
      for (int k = 0; k < 4; ++k)
        EXPECT_NEAR(std::abs(got.frames[step].exit_amplitudes[k] - want[step][k]), 0.0, 1e-12);
  }
}

TEST(Walk, ScheduleReplacesCoinAtItsStep) {
  std::mt19937 rng(8);
  const GraphSpec g = pair_graph(coin_vertex(), coin_vertex(), 0.0);
  const auto engine = build_network<Complex>(g);
  const UnitaryMatrix u1 = random_unitary3(rng);
  const UnitaryMatrix u2 = random_unitary3(rng);
  Schedule sched;
  sched.set(1, 0, VertexOverride{u1, {}});
  sched.set(2, 1, VertexOverride{u2, {}});
  const auto want = coin_oracle(g, 0, 5, {{1, {{0, u1}}}, {2, {{1, u2}}}});
  const auto got = run_walk(engine, 0, 5, &sched);
  for (int step = 0; step < 5; ++step)
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(std::abs(got.frames[step].exit_amplitudes[k] - want[step][k]), 0.0, 1e-12);
  // The unscheduled walk differs.
  const auto plain = run_walk(engine, 0, 5);
  EXPECT_GT(std::abs(plain.frames[0].exit_amplitudes[0] - got.frames[0].exit_amplitudes[0]), 1e-6);
}

TEST(Walk, PhysicalOverrideWithDefaultsIsNeutral) {
  const MultiportSpec s = MultiportSpec::regular(3);
  const auto engine = build_network<Complex>(GraphSpec::single_vertex(physical_vertex(s)));
  Schedule sched;
  sched.set(3, 0, VertexOverride{std::nullopt, {VertexParams{}}});
  const auto a = run_walk(engine, 0, 10, &sched);
  const auto b = run_walk(engine, 0, 10);
  for (int step = 0; step < 10; ++step)
    for (int k = 0; k < 3; ++k)
      EXPECT_NEAR(std::abs(a.frames[step].exit_amplitudes[k] - b.frames[step].exit_amplitudes[k]), 0.0, 1e-15);

  // Changing the mirrors at step 3 changes later exits and keeps probability.
  VertexParams p;
  p.mirror = Complex(1.0, 0.0);
  Schedule flip;
  flip.set(3, 0, VertexOverride{std::nullopt, {p}});
  const auto c = run_walk(engine, 0, 10, &flip);
  EXPECT_NEAR(c.frames.back().total, 1.0, 1e-12);
  double diff = 0.0;
  for (int step = 0; step < 10; ++step)
    for (int k = 0; k < 3; ++k) diff += std::abs(c.frames[step].exit_amplitudes[k] - b.frames[step].exit_amplitudes[k]);
  EXPECT_GT(diff, 1e-6);
}

TEST(Walk, ScheduleErrors) {
  const auto coins = build_network<Complex>(pair_graph(coin_vertex(), coin_vertex(), 0.0));
  Schedule bad;
  UnitaryMatrix m = UnitaryMatrix::identity(3);
  m(0, 0) = 2.0;
  bad.set(1, 0, VertexOverride{m, {}});
  EXPECT_THROW(run_walk(coins, 0, 3, &bad), SpecError);
  Schedule wrong_dim;
  wrong_dim.set(1, 0, VertexOverride{UnitaryMatrix::identity(2), {}});
  EXPECT_THROW(run_walk(coins, 0, 3, &wrong_dim), SpecError);
  Schedule corners_on_coin;
  corners_on_coin.set(1, 0, VertexOverride{std::nullopt, {VertexParams{}}});
  EXPECT_THROW(run_walk(coins, 0, 3, &corners_on_coin), SpecError);
  Schedule missing;
  missing.set(1, 7, VertexOverride{UnitaryMatrix::identity(3), {}});
  EXPECT_THROW(run_walk(coins, 0, 3, &missing), SpecError);

  const auto phys = build_network<Complex>(GraphSpec::single_vertex(physical_vertex(MultiportSpec::regular(3))));
  Schedule two_corners;
  two_corners.set(2, 0, VertexOverride{std::nullopt, {VertexParams{}, VertexParams{}}});
  EXPECT_THROW(run_walk(phys, 0, 3, &two_corners), SpecError);
  Schedule coin_on_phys;
  coin_on_phys.set(2, 0, VertexOverride{UnitaryMatrix::identity(3), {}});
  EXPECT_THROW(run_walk(phys, 0, 3, &coin_on_phys), SpecError);
  EXPECT_THROW(run_walk(phys, 5, 3), SpecError);
  EXPECT_THROW(run_walk(phys, 0, 0), SpecError);
}

TEST(Walk, ValidationErrors) {
  GraphSpec g = pair_graph(coin_vertex(), coin_vertex(), 0.0);
  EXPECT_NO_THROW(g.validate());
  EXPECT_EQ(g.find_lead("e"), 2);
  EXPECT_THROW(g.find_lead("x"), SpecError);

  GraphSpec twice = g;
  twice.leads[1].at = {0, 0};
  EXPECT_THROW(twice.validate(), SpecError);

  GraphSpec open = g;
  open.leads.pop_back();
  EXPECT_THROW(open.validate(), SpecError);

  GraphSpec dup = g;
  dup.leads[1].name = "w";
  EXPECT_THROW(dup.validate(), SpecError);

  GraphSpec bad_coin = g;
  bad_coin.vertices[0].coin = UnitaryMatrix::identity(4);
  EXPECT_THROW(bad_coin.validate(), SpecError);

  GraphSpec phys = g;
  phys.vertices[1] = physical_vertex(MultiportSpec::regular(4));
  phys.vertices[1].degree = 3;
  EXPECT_THROW(phys.validate(), SpecError);

  GraphSpec split;
  split.vertices = {coin_vertex(2), coin_vertex(2)};
  split.leads = {{"a", {0, 0}}, {"b", {0, 1}}, {"c", {1, 0}}, {"d", {1, 1}}};
  EXPECT_THROW(split.validate(), SpecError);
  split.allow_disconnected = true;
  EXPECT_NO_THROW(split.validate());

  GraphSpec ghost = g;
  ghost.edges[0].b = {4, 0};
  EXPECT_THROW(ghost.validate(), SpecError);
}

TEST(Walk, ConservationOnRandomGraphs) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 10; ++trial) {
    const auto engine = build_network<Complex>(pair_graph(physical_vertex(testing_support::random_spec(rng, 3)),
                                                          physical_vertex(testing_support::random_spec(rng, 3)), 0.3));
    const auto series = run_walk(engine, trial % 4, 60);
    for (const auto& f : series.frames) {
      double exits = 0.0;
      for (double c : f.cumulative_exit) exits += c;
      EXPECT_NEAR(exits + f.internal, 1.0, 1e-12);
      double parts = 0.0;
      for (double p : f.edge_probability) parts += p;
      for (double p : f.vertex_probability) parts += p;
      EXPECT_NEAR(parts, f.internal, 1e-12);
    }
  }
}

TEST(Walk, CoherenceBudget) {
  TimingInputs in;
  in.d = 1e-4;
  in.pulse_duration = 100e-12;
  const auto laser = coherence_budget(in);
  EXPECT_EQ(laser.budget.steps, 376);
  EXPECT_FALSE(laser.budget.unbounded);

  in.pulse_duration.reset();
  in.bandwidth = 1e12;  // tau = 1 ps, shorter than one clock period
  EXPECT_EQ(coherence_budget(in).budget.steps, 0);

  in.bandwidth.reset();
  EXPECT_TRUE(coherence_budget(in).budget.unbounded);

  EXPECT_EQ(coherence_budget(1e-9, 3.3e-12).steps, 303);
}

}  // namespace
}  // namespace multiport
