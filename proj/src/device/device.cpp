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
#include "multiport/device/device.hpp"

#include <cmath>
#include <functional>

#include "multiport/core/ports.hpp"

namespace multiport {
namespace {

void check_port(const MultiportSpec& spec, int port) {
  if (port < 0 || port >= spec.ports)
    throw SpecError("port index " + std::to_string(port) + " outside a " + std::to_string(spec.ports) + "-port device");
}

template <Amplitude T>
bool conserved(const RealOf<T>& internal, const RealOf<T>& cumulative) {
  if constexpr (ScalarOps<T>::kExact) {
    return internal + cumulative == Surd(1);
  } else {
    return std::abs(internal + cumulative - 1.0) < 1e-9;
  }
}

}  // namespace

template <Amplitude T>
ExitRecord<T> exit_record(const MultiportSpec& spec, int input_port, int n_max) {
  check_port(spec, input_port);
  if (n_max < 1) throw SpecError("exit record needs at least one encounter");
  const DeviceGraph<T> graph = compile<T>(spec);
  Evolution<T> evo(graph);
  ExitRecord<T> record;
  record.input_port = input_port;
  RealOf<T> cumulative{};
  for (int n = 1; n <= n_max; ++n) {
    ExitRow<T> row;
    row.encounter = n;
    row.amplitudes = n == 1 ? evo.inject(input_port, ScalarOps<T>::one()) : evo.step();
    for (const auto& a : row.amplitudes) row.step_probability += ScalarOps<T>::norm(a);
    cumulative += row.step_probability;
    row.cumulative_probability = cumulative;
    row.internal_probability = evo.internal_norm2();
    if (!conserved<T>(row.internal_probability, row.cumulative_probability))
      throw InvariantError("probability not conserved at encounter " + std::to_string(n));
    record.rows.push_back(std::move(row));
  }
  return record;
}

template <Amplitude T>
int PathTrace<T>::mirror_encounters() const {
  int count = 0;
  for (const auto& s : symbols) count += s.kind == 'M';
  return count;
}

template <Amplitude T>
std::string PathTrace<T>::compact() const {
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += ' ';
    out += s.kind;
  }
  return out;
}

template <Amplitude T>
std::string PathTrace<T>::annotated() const {
  std::string out;
  for (const auto& s : symbols) {
    if (!out.empty()) out += ' ';
    out += s.kind;
    out += port_label(s.vertex);
  }
  return out;
}

template <Amplitude T>
std::vector<PathTrace<T>> enumerate_paths(const MultiportSpec& spec, int input_port, int exit_port, int encounters) {
  check_port(spec, input_port);
  check_port(spec, exit_port);
  if (encounters > spec.max_steps)
    throw SpecError("path length " + std::to_string(encounters) + " exceeds max_steps " + std::to_string(spec.max_steps));
  const DeviceGraph<T> graph = compile<T>(spec);
  const auto& nodes = graph.nodes();
  std::vector<std::pair<int, int>> arrival(graph.modes().size(), {-1, -1});
  for (size_t k = 0; k < nodes.size(); ++k)
    for (size_t a = 0; a < nodes[k].arms.size(); ++a)
      if (nodes[k].arms[a].in_mode >= 0) arrival[nodes[k].arms[a].in_mode] = {static_cast<int>(k), static_cast<int>(a)};
  std::vector<const Transit<T>*> transit_from(graph.modes().size(), nullptr);
  for (const auto& tr : graph.transits()) transit_from[tr.from_mode] = &tr;

  std::vector<PathTrace<T>> found;
  PathTrace<T> current;
  // Scatter at (node, in_arm) with the running amplitude, then recurse.
  std::function<void(int, int, const T&, int)> visit = [&](int node, int in_arm, const T& amp, int n) {
    const auto& nd = nodes[node];
    for (int out = 0; out < static_cast<int>(nd.arms.size()); ++out) {
      const T& s = nd.scatter(out, in_arm);
      if (ScalarOps<T>::is_zero(s)) continue;
      const Arm& arm = nd.arms[out];
      current.symbols.push_back(PathSymbol{nd.symbol(out, in_arm), node});
      const T next = amp * s;
      if (arm.lead >= 0) {
        if (n == encounters && arm.lead == exit_port) {
          PathTrace<T> hit = current;
          hit.amplitude = next;
          hit.encounters = n;
          found.push_back(std::move(hit));
        }
      } else if (n < encounters) {
        const Transit<T>* tr = transit_from[arm.out_mode];
        const bool mirror = tr->mirror >= 0;
        if (mirror) current.symbols.push_back(PathSymbol{'M', graph.mirrors()[tr->mirror].node});
        const auto [to_node, to_arm] = arrival[tr->to_mode];
        visit(to_node, to_arm, next * tr->factor, n + 1);
        if (mirror) current.symbols.pop_back();
      }
      current.symbols.pop_back();
    }
  };
  const Lead& lead = graph.leads()[input_port];
  visit(lead.node, lead.arm, ScalarOps<T>::one(), 1);
  return found;
}

SteadyStateResult steady_state(const MultiportSpec& spec, double tol) {
  if (!(tol > 0.0)) throw SpecError("steady-state tolerance must be positive");
  const DeviceGraph<Complex> graph = compile<Complex>(spec);
  const int n = spec.ports;
  SteadyStateResult result;
  result.matrix = UnitaryMatrix(n);
  result.converged = true;
  for (int in = 0; in < n; ++in) {
    Evolution<Complex> evo(graph);
    std::vector<Complex> total = evo.inject(in, 1.0);
    double residual = std::sqrt(evo.internal_norm2());
    while (residual >= tol && evo.steps_taken() < spec.max_steps) {
      const auto exits = evo.step();
      for (int out = 0; out < n; ++out) total[out] += exits[out];
      residual = std::sqrt(evo.internal_norm2());
    }
    for (int out = 0; out < n; ++out) result.matrix(out, in) = total[out];
    result.residual = std::max(result.residual, residual);
    result.steps_used = std::max(result.steps_used, evo.steps_taken());
    if (residual >= tol) result.converged = false;
  }
  return result;
}

template <Amplitude T>
SquareMatrix<T> steady_state_resolvent(const MultiportSpec& spec) {
  const DeviceGraph<T> graph = compile<T>(spec);
  const TransferOperator<T> op = transfer_operator(graph);
  const int modes = static_cast<int>(graph.modes().size());
  const int leads = static_cast<int>(graph.leads().size());
  // Augmented system [I - W | inject_0 ... inject_{L-1}].
  std::vector<std::vector<T>> a(modes, std::vector<T>(modes + leads, ScalarOps<T>::zero()));
  for (int r = 0; r < modes; ++r) {
    for (int c = 0; c < modes; ++c) a[r][c] = (r == c ? ScalarOps<T>::one() : ScalarOps<T>::zero()) - op.internal[r][c];
    for (int l = 0; l < leads; ++l) a[r][modes + l] = op.inject[l][r];
  }
  // Row-reduce. Dark internal modes (never fed by a lead, never exiting)
  // can make I - W singular; the system stays consistent and any solution
  // gives the same exits, so free unknowns are set to zero.
  std::vector<int> pivot_col_of_row;
  int row = 0;
  for (int col = 0; col < modes && row < modes; ++col) {
    int pivot = -1;
    double best = 0.0;
    for (int r = row; r < modes; ++r) {
      const double w = ScalarOps<T>::pivot_weight(a[r][col]);
      if (w > best) {
        best = w;
        pivot = r;
        if constexpr (ScalarOps<T>::kExact) break;
      }
    }
    if (pivot < 0 || best < 1e-12) continue;
    std::swap(a[row], a[pivot]);
    const T inv = ScalarOps<T>::one() / a[row][col];
    for (int c = col; c < modes + leads; ++c) a[row][c] = a[row][c] * inv;
    for (int r = 0; r < modes; ++r) {
      if (r == row || ScalarOps<T>::is_zero(a[r][col])) continue;
      const T f = a[r][col];
      for (int c = col; c < modes + leads; ++c) a[r][c] -= f * a[row][c];
    }
    pivot_col_of_row.push_back(col);
    ++row;
  }
  for (int r = row; r < modes; ++r)
    for (int l = 0; l < leads; ++l)
      if (ScalarOps<T>::pivot_weight(a[r][modes + l]) > 1e-9)
        throw ConvergenceError("steady state does not exist: amplitude is trapped inside the device", 0.0);
  std::vector<std::vector<T>> solution(modes, std::vector<T>(leads, ScalarOps<T>::zero()));
  for (int r = 0; r < row; ++r)
    for (int l = 0; l < leads; ++l) solution[pivot_col_of_row[r]][l] = a[r][modes + l];
  SquareMatrix<T> out(leads);
  for (int in = 0; in < leads; ++in)
    for (int o = 0; o < leads; ++o) {
      T acc = op.direct[in][o];
      for (int m = 0; m < modes; ++m) acc += op.exit[o][m] * solution[m][in];
      out(o, in) = acc;
    }
  return out;
}

template <Amplitude T>
AmplitudeSeries<T> amplitude_series(const MultiportSpec& spec, int input_port, int output_port, int n_max,
                                    int min_ratios) {
  check_port(spec, output_port);
  const ExitRecord<T> record = exit_record<T>(spec, input_port, n_max);
  AmplitudeSeries<T> series;
  T sum = ScalarOps<T>::zero();
  for (const auto& row : record.rows) {
    const T& a = row.amplitudes[output_port];
    if (ScalarOps<T>::negligible(a)) continue;
    sum += a;
    series.encounters.push_back(row.encounter);
    series.terms.push_back(a);
    series.partial_sums.push_back(sum);
  }
  const int k = static_cast<int>(series.terms.size());
  if (k < min_ratios + 1)
    throw ConvergenceError("need " + std::to_string(min_ratios + 1) + " nonzero terms to extrapolate, have " +
                               std::to_string(k),
                           0.0);
  std::vector<T> ratios;
  for (int j = k - min_ratios; j < k; ++j) ratios.push_back(series.terms[j] / series.terms[j - 1]);
  const T& rho = ratios.back();
  for (const T& q : ratios) {
    bool same;
    if constexpr (ScalarOps<T>::kExact) same = q == rho;
    else same = std::abs(q - rho) < 1e-9 * std::max(1.0, std::abs(rho));
    if (!same) {
      throw ConvergenceError("successive terms do not share a common ratio",
                             std::abs(ScalarOps<T>::to_complex(q) - ScalarOps<T>::to_complex(rho)));
    }
  }
  bool contracting;
  if constexpr (ScalarOps<T>::kExact) contracting = ScalarOps<T>::norm(rho) < Surd(1);
  else contracting = std::abs(rho) < 1.0;
  if (!contracting) throw ConvergenceError("common ratio is not contracting", std::abs(ScalarOps<T>::to_complex(rho)));
  series.ratio = rho;
  series.extrapolated = sum + series.terms.back() * rho / (ScalarOps<T>::one() - rho);
  return series;
}

#define MULTIPORT_INSTANTIATE_DEVICE(T)                                                              \
  template ExitRecord<T> exit_record<T>(const MultiportSpec&, int, int);                             \
  template struct PathTrace<T>;                                                                      \
  template std::vector<PathTrace<T>> enumerate_paths<T>(const MultiportSpec&, int, int, int);        \
  template SquareMatrix<T> steady_state_resolvent<T>(const MultiportSpec&);                          \
  template AmplitudeSeries<T> amplitude_series<T>(const MultiportSpec&, int, int, int, int);

MULTIPORT_INSTANTIATE_DEVICE(Complex)
MULTIPORT_INSTANTIATE_DEVICE(ExactComplex)

}  // namespace multiport
