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
#include "multiport/core/eigen.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>

namespace multiport {

std::vector<EigenPair> eigensystem_small(const UnitaryMatrix& m, double cluster_tol, double residual_tol) {
  const int n = m.dim();
  if (n < 1 || n > 8) throw DimensionError("eigensystem_small supports 1 <= dim <= 8, got " + std::to_string(n));
  Eigen::MatrixXcd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) a(r, c) = m(r, c);

  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(a);
  if (solver.info() != Eigen::Success) throw ConvergenceError("complex eigensolver did not converge", INFINITY);

  const auto& values = solver.eigenvalues();
  // Cluster numerically equal eigenvalues, then order clusters by phase.
  std::vector<std::vector<int>> clusters;
  for (int k = 0; k < n; ++k) {
    auto hit = std::find_if(clusters.begin(), clusters.end(), [&](const std::vector<int>& c) {
      return std::abs(values(c.front()) - values(k)) < cluster_tol;
    });
    if (hit == clusters.end()) clusters.push_back({k});
    else hit->push_back(k);
  }
  auto mean_of = [&](const std::vector<int>& c) {
    Complex mean{0.0, 0.0};
    for (int k : c) mean += values(k);
    return mean / static_cast<double>(c.size());
  };
  std::sort(clusters.begin(), clusters.end(), [&](const auto& x, const auto& y) {
    const Complex mx = mean_of(x);
    const Complex my = mean_of(y);
    if (std::arg(mx) != std::arg(my)) return std::arg(mx) < std::arg(my);
    return std::abs(mx) < std::abs(my);
  });

  std::vector<EigenPair> out;
  for (const auto& cluster : clusters) {
    const int k = static_cast<int>(cluster.size());
    const Complex mean = mean_of(cluster);
    Eigen::MatrixXcd block(n, k);
    for (int j = 0; j < k; ++j) block.col(j) = solver.eigenvectors().col(cluster[j]);
    // Orthonormal basis of the (possibly degenerate) eigenspace.
    Eigen::HouseholderQR<Eigen::MatrixXcd> qr(block);
    Eigen::MatrixXcd q = qr.householderQ() * Eigen::MatrixXcd::Identity(n, k);
    for (int j = 0; j < k; ++j) {
      EigenPair pair{mean, std::vector<Complex>(n)};
      for (int r = 0; r < n; ++r) pair.vector[r] = q(r, j);
      out.push_back(std::move(pair));
    }
  }

  double worst = 0.0;
  for (const auto& pair : out) {
    const auto mv = m.apply(pair.vector);
    double res = 0.0;
    for (int r = 0; r < n; ++r) res += std::norm(mv[r] - pair.value * pair.vector[r]);
    worst = std::max(worst, std::sqrt(res));
  }
  if (worst > residual_tol) throw ConvergenceError("eigenpair residual " + std::to_string(worst), worst);
  return out;
}

std::vector<EigenSpace> group_eigenspaces(const std::vector<EigenPair>& pairs, double tol) {
  std::vector<EigenSpace> out;
  for (const auto& pair : pairs) {
    if (!out.empty() && std::abs(out.back().value - pair.value) < tol) {
      out.back().basis.push_back(pair.vector);
    } else {
      out.push_back(EigenSpace{pair.value, {pair.vector}});
    }
  }
  return out;
}

}  // namespace multiport
