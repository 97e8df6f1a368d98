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

// Test-only oracles, independent of the implementation paths they check.

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "qadapt/pauli.hpp"
#include "qadapt/rng.hpp"

namespace qadapt::testing {

inline Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a,
                             const Eigen::MatrixXcd& b) {
  Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

// Hand-rolled single-qubit matrices, kron'd left to right. Independent of
// pauli_matrix (which folds its own Kronecker product).
inline Eigen::MatrixXcd dense_pauli(const std::string& text) {
  const std::complex<double> im(0, 1);
  Eigen::MatrixXcd x(2, 2), y(2, 2), z(2, 2), id(2, 2);
  x << 0, 1, 1, 0;
  y << 0, -im, im, 0;
  z << 1, 0, 0, -1;
  id << 1, 0, 0, 1;
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(1, 1);
  for (char c : text) {
    switch (c) {
      case 'X': out = kron(out, x); break;
      case 'Y': out = kron(out, y); break;
      case 'Z': out = kron(out, z); break;
      default: out = kron(out, id); break;
    }
  }
  return out;
}

// Matrix exponential of i * theta * P via the eigendecomposition of the
// Hermitian matrix P (no use of the cos/sin shortcut under test).
inline Eigen::MatrixXcd expm_i_theta(const Eigen::MatrixXcd& p, double theta) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(p);
  const Eigen::VectorXd evals = solver.eigenvalues();
  Eigen::VectorXcd phases(evals.size());
  for (Eigen::Index k = 0; k < evals.size(); ++k) {
    phases(k) = std::exp(std::complex<double>(0.0, theta * evals(k)));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

inline Eigen::MatrixXd random_symmetric(int dim, SplitMix64& rng) {
  Eigen::MatrixXd a(dim, dim);
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  }
  return 0.5 * (a + a.transpose()).eval();
}

inline PauliString random_string(int n, SplitMix64& rng) {
  std::string text;
  const char codes[4] = {'I', 'X', 'Y', 'Z'};
  for (int k = 0; k < n; ++k) text += codes[rng.next() % 4];
  return PauliString::from_text(text);
}

// Central finite differences of a scalar function of many variables.
inline std::vector<double> central_differences(
    const std::function<double(const std::vector<double>&)>& f,
    std::vector<double> x, double step) {
  std::vector<double> grad(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double saved = x[i];
    x[i] = saved + step;
    const double up = f(x);
    x[i] = saved - step;
    const double down = f(x);
    x[i] = saved;
    grad[i] = (up - down) / (2.0 * step);
  }
  return grad;
}

// Brute-force Lie-closure dimension: Frobenius-orthogonal rank growth over
// repeated dense commutators.
inline int closure_dim_dense(const std::vector<Eigen::MatrixXcd>& generators) {
  std::vector<Eigen::MatrixXcd> ortho;
  auto insert = [&](Eigen::MatrixXcd m) {
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& b : ortho) {
        const std::complex<double> c =
            (b.adjoint() * m).trace() / (b.adjoint() * b).trace();
        m -= c * b;
      }
    }
    if (m.norm() > 1e-9) {
      ortho.push_back(m);
      return true;
    }
    return false;
  };

  std::vector<Eigen::MatrixXcd> elems;
  for (const auto& g : generators) {
    Eigen::MatrixXcd a = std::complex<double>(0, 1) * g;
    if (insert(a)) elems.push_back(a);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Eigen::MatrixXcd comm = elems[i] * elems[j] - elems[j] * elems[i];
      if (insert(comm)) elems.push_back(comm);
    }
  }
  return static_cast<int>(ortho.size());
}

}  // namespace qadapt::testing
