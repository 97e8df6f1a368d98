// Copyright 2026 The qadapt authors
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

#include "qadapt/quadrature.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace qadapt {

QuadratureRule gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: need n >= 1");
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));

  const double pi = 3.14159265358979323846;
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = std::cos(pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double step = p1 / dp;
      x -= step;
      if (std::abs(step) < 1e-15) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  return rule;
}

QuadratureRule gauss_laguerre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_laguerre: need n >= 1");
  // Golub-Welsch on the symmetric Jacobi matrix of the Laguerre recurrence:
  // diagonal 2k+1, off-diagonal k. Nodes are the eigenvalues, weights the
  // squared first components (mu_0 = 1).
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(n, n);
  for (int k = 0; k < n; ++k) {
    jacobi(k, k) = 2.0 * k + 1.0;
    if (k + 1 < n) {
      jacobi(k, k + 1) = k + 1.0;
      jacobi(k + 1, k) = k + 1.0;
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("gauss_laguerre: eigensolver failed");
  }
  QuadratureRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    rule.nodes[static_cast<std::size_t>(k)] = solver.eigenvalues()(k);
    const double v0 = solver.eigenvectors()(0, k);
    rule.weights[static_cast<std::size_t>(k)] = v0 * v0;
  }
  return rule;
}

}  // namespace qadapt
