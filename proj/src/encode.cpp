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

#include "qadapt/encode.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qadapt {

namespace {

bool is_power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

int log2_exact(int n) { return std::countr_zero(static_cast<unsigned>(n)); }

}  // namespace

HamiltonianMatrix::HamiltonianMatrix(Eigen::MatrixXd entries, Metadata meta)
    : meta_(std::move(meta)) {
  if (entries.rows() != entries.cols() || entries.rows() < 1) {
    throw std::invalid_argument("HamiltonianMatrix: matrix must be square");
  }
  if (!entries.allFinite()) {
    throw std::invalid_argument("HamiltonianMatrix: entries must be finite");
  }
  m_ = 0.5 * (entries + entries.transpose());
}

PauliSum pauli_decompose(const HamiltonianMatrix& h) {
  const int dim = h.dim();
  if (dim < 2 || !is_power_of_two(dim)) {
    throw std::invalid_argument(
        "pauli_decompose: dimension must be 2^n with n >= 1; apply "
        "pad_to_power_of_two first");
  }
  const int n = log2_exact(dim);
  const auto& m = h.entries();
  const double scale = 1.0 / static_cast<double>(dim);

  PauliSum sum(n);
  const std::uint64_t mask_count = 1ULL << n;
  for (std::uint64_t x = 0; x < mask_count; ++x) {
    for (std::uint64_t z = 0; z < mask_count; ++z) {
      const int yc = std::popcount(x & z);
      // Odd-Y strings are i * (real antisymmetric); their trace against a
      // symmetric matrix cancels pairwise, exactly, so skip them.
      if (yc & 1) continue;
      const double sign_c = (yc & 3) == 0 ? 1.0 : -1.0;
      double acc = 0.0;
      for (std::uint64_t j = 0; j < mask_count; ++j) {
        const std::uint64_t k = j ^ x;
        const double sgn =
            (std::popcount(z & k) & 1) ? -1.0 : 1.0;
        acc += sgn * m(static_cast<Eigen::Index>(k),
                       static_cast<Eigen::Index>(j));
      }
      const double coeff = sign_c * scale * acc;
      if (std::abs(coeff) < kEncodeDropThreshold) continue;
      sum.add(coeff, PauliString::from_masks(n, x, z));
    }
  }
  return sum;
}

Eigen::MatrixXd pauli_reconstruct(const PauliSum& s) {
  const int n = s.n_qubits();
  if (n > 8) {
    throw std::invalid_argument("pauli_reconstruct: limited to 8 qubits");
  }
  const std::uint64_t dim = 1ULL << n;
  Eigen::MatrixXcd acc = Eigen::MatrixXcd::Zero(
      static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  const std::complex<double> i_pow[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& term : s.terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    const std::complex<double> head =
        term.coefficient * i_pow[term.string.y_count() & 3];
    for (std::uint64_t col = 0; col < dim; ++col) {
      const double sgn = (std::popcount(z & col) & 1) ? -1.0 : 1.0;
      acc(static_cast<Eigen::Index>(col ^ x),
          static_cast<Eigen::Index>(col)) += head * sgn;
    }
  }
  const double residue = acc.imag().cwiseAbs().maxCoeff();
  if (residue >= 1e-12) {
    throw std::runtime_error(
        "pauli_reconstruct: imaginary residue " + std::to_string(residue) +
        " signals an invalid sum");
  }
  return acc.real();
}

double padding_level(const HamiltonianMatrix& h) {
  return h.max_diagonal() + 10.0;
}

HamiltonianMatrix pad_to_power_of_two(const HamiltonianMatrix& h,
                                      int min_dim) {
  if (min_dim < 1 || !is_power_of_two(min_dim)) {
    throw std::invalid_argument("pad_to_power_of_two: min_dim must be 2^k");
  }
  int target = min_dim;
  while (target < h.dim()) target *= 2;
  if (target == h.dim()) return h;

  Eigen::MatrixXd padded =
      Eigen::MatrixXd::Zero(target, target);
  padded.topLeftCorner(h.dim(), h.dim()) = h.entries();
  const double level = padding_level(h);
  for (int i = h.dim(); i < target; ++i) padded(i, i) = level;
  return HamiltonianMatrix(std::move(padded), h.metadata());
}

}  // namespace qadapt
