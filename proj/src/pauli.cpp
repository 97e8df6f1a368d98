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

#include "qadapt/pauli.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <utility>

namespace qadapt {

namespace {

void check_qubit_count(int n) {
  if (n < 1 || n > 64) {
    throw std::invalid_argument("PauliString: qubit count must be in [1, 64]");
  }
}

// i^k for k in 0..3.
std::complex<double> i_power(int k) {
  switch (k & 3) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

}  // namespace

PauliString::PauliString(int n_qubits) : n_(n_qubits) {
  check_qubit_count(n_qubits);
}

PauliString PauliString::from_text(std::string_view text) {
  const int n = static_cast<int>(text.size());
  check_qubit_count(n);
  std::uint64_t x = 0, z = 0;
  for (int pos = 0; pos < n; ++pos) {
    const std::uint64_t bit = 1ULL << (n - 1 - pos);
    switch (text[static_cast<std::size_t>(pos)]) {
      case 'I': break;
      case 'X': x |= bit; break;
      case 'Y': x |= bit; z |= bit; break;
      case 'Z': z |= bit; break;
      default:
        throw std::invalid_argument("PauliString: invalid code character '" +
                                    std::string(1, text[pos]) + "'");
    }
  }
  return PauliString(n, x, z);
}

PauliString PauliString::single(int n_qubits, int k, char axis) {
  check_qubit_count(n_qubits);
  if (k < 1 || k > n_qubits) {
    throw std::invalid_argument("PauliString::single: qubit index out of range");
  }
  const std::uint64_t bit = 1ULL << (n_qubits - k);
  switch (axis) {
    case 'X': return PauliString(n_qubits, bit, 0);
    case 'Y': return PauliString(n_qubits, bit, bit);
    case 'Z': return PauliString(n_qubits, 0, bit);
    default:
      throw std::invalid_argument("PauliString::single: axis must be X, Y or Z");
  }
}

PauliString PauliString::from_masks(int n_qubits, std::uint64_t x,
                                    std::uint64_t z) {
  check_qubit_count(n_qubits);
  const std::uint64_t valid =
      n_qubits == 64 ? ~0ULL : ((1ULL << n_qubits) - 1);
  if ((x & ~valid) != 0 || (z & ~valid) != 0) {
    throw std::invalid_argument("PauliString::from_masks: mask exceeds qubit count");
  }
  return PauliString(n_qubits, x, z);
}

char PauliString::code(int k) const {
  if (k < 1 || k > n_) {
    throw std::invalid_argument("PauliString::code: qubit index out of range");
  }
  const std::uint64_t bit = 1ULL << (n_ - k);
  const bool xs = (x_ & bit) != 0;
  const bool zs = (z_ & bit) != 0;
  if (xs && zs) return 'Y';
  if (xs) return 'X';
  if (zs) return 'Z';
  return 'I';
}

std::string PauliString::text() const {
  std::string out(static_cast<std::size_t>(n_), 'I');
  for (int k = 1; k <= n_; ++k) out[static_cast<std::size_t>(k - 1)] = code(k);
  return out;
}

int PauliString::y_count() const {
  return std::popcount(x_ & z_);
}

int PauliString::weight() const {
  return std::popcount(x_ | z_);
}

bool PauliString::commutes_with(const PauliString& other) const {
  if (n_ != other.n_) {
    throw std::invalid_argument("PauliString: qubit count mismatch");
  }
  const int overlap =
      std::popcount(x_ & other.z_) + std::popcount(z_ & other.x_);
  return (overlap & 1) == 0;
}

PauliProduct pauli_mul(const PauliString& p, const PauliString& q) {
  if (p.n_qubits() != q.n_qubits()) {
    throw std::invalid_argument("pauli_mul: qubit count mismatch");
  }
  // Write each string as i^{|x&z|} X^x Z^z. Moving the Z part of p past the
  // X part of q costs (-1)^{|z_p & x_q|}; recombining into the canonical form
  // of the result removes i^{|x&z|} of the product masks.
  const std::uint64_t x = p.x_mask() ^ q.x_mask();
  const std::uint64_t z = p.z_mask() ^ q.z_mask();
  const int k = std::popcount(p.x_mask() & p.z_mask()) +
                std::popcount(q.x_mask() & q.z_mask()) +
                3 * std::popcount(x & z) +
                2 * std::popcount(p.z_mask() & q.x_mask());
  return {i_power(k), PauliString::from_masks(p.n_qubits(), x, z)};
}

Eigen::MatrixXcd pauli_matrix(const PauliString& p) {
  const int n = p.n_qubits();
  if (n > 10) {
    throw std::invalid_argument("pauli_matrix: limited to 10 qubits");
  }
  using Mat = Eigen::MatrixXcd;
  const std::complex<double> im(0.0, 1.0);
  Mat sigma_i = Mat::Identity(2, 2);
  Mat sigma_x(2, 2), sigma_y(2, 2), sigma_z(2, 2);
  sigma_x << 0, 1, 1, 0;
  sigma_y << 0, -im, im, 0;
  sigma_z << 1, 0, 0, -1;

  Mat out = Mat::Identity(1, 1);
  for (int k = 1; k <= n; ++k) {
    const Mat* factor = &sigma_i;
    switch (p.code(k)) {
      case 'X': factor = &sigma_x; break;
      case 'Y': factor = &sigma_y; break;
      case 'Z': factor = &sigma_z; break;
      default: break;
    }
    Mat next(out.rows() * 2, out.cols() * 2);
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
      for (Eigen::Index c = 0; c < out.cols(); ++c) {
        next.block(2 * r, 2 * c, 2, 2) = out(r, c) * (*factor);
      }
    }
    out = std::move(next);
  }
  return out;
}

void PauliSum::add(double coefficient, const PauliString& string) {
  if (string.n_qubits() != n_) {
    throw std::invalid_argument("PauliSum::add: qubit count mismatch");
  }
  for (auto& term : terms_) {
    if (term.string == string) {
      term.coefficient += coefficient;
      return;
    }
  }
  terms_.push_back({coefficient, string});
}

int lie_closure_dim(std::span<const PauliString> pool) {
  if (pool.empty()) {
    throw std::invalid_argument("lie_closure_dim: empty pool");
  }
  const int n = pool.front().n_qubits();
  if (n > 5) {
    throw std::invalid_argument("lie_closure_dim: limited to 5 qubits");
  }
  for (const auto& p : pool) {
    if (p.n_qubits() != n) {
      throw std::invalid_argument("lie_closure_dim: mixed qubit counts");
    }
  }

  // [i P, i Q] is proportional to i (P Q) when P and Q anticommute and
  // vanishes otherwise. Distinct strings are Hilbert-Schmidt orthogonal, so
  // the closure dimension is the fixpoint cardinality of the string set.
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  std::vector<PauliString> elems;
  for (const auto& p : pool) {
    if (seen.insert({p.x_mask(), p.z_mask()}).second) elems.push_back(p);
  }
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (elems[i].commutes_with(elems[j])) continue;
      PauliString prod = pauli_mul(elems[i], elems[j]).string;
      if (seen.insert({prod.x_mask(), prod.z_mask()}).second) {
        elems.push_back(std::move(prod));
      }
    }
  }
  return static_cast<int>(elems.size());
}

}  // namespace qadapt
