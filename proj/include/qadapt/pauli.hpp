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

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qadapt {

/// Tensor product of single-qubit Pauli operators.
///
/// Conventions used throughout the project:
///  - qubit 1 is the leftmost character of the text form ("XIZY") and the
///    most significant bit of a computational basis-state index;
///  - the string is Hermitian, squares to the identity, and is stored as an
///    (X-part, Z-part) bitmask pair with Y = i X Z, so products and phases
///    reduce to exact integer bookkeeping.
class PauliString {
 public:
  /// The n-qubit identity.
  explicit PauliString(int n_qubits);

  /// Parse a text form such as "XIZY" (qubit 1 leftmost).
  static PauliString from_text(std::string_view text);

  /// Identity everywhere except `axis` ('X','Y','Z') on qubit `k` (1-based).
  static PauliString single(int n_qubits, int k, char axis);

  /// Construct from raw bitmasks. Bit (n_qubits - k) of each mask belongs to
  /// qubit k, matching the basis-state index convention.
  static PauliString from_masks(int n_qubits, std::uint64_t x, std::uint64_t z);

  int n_qubits() const { return n_; }
  std::uint64_t x_mask() const { return x_; }
  std::uint64_t z_mask() const { return z_; }

  /// Pauli letter on qubit k (1-based).
  char code(int k) const;
  std::string text() const;

  bool is_identity() const { return x_ == 0 && z_ == 0; }
  int y_count() const;
  int weight() const;  // number of non-identity positions

  /// True iff the strings commute (even symplectic overlap).
  bool commutes_with(const PauliString& other) const;

  friend bool operator==(const PauliString& a, const PauliString& b) = default;
  friend auto operator<=>(const PauliString& a, const PauliString& b) = default;

 private:
  PauliString(int n, std::uint64_t x, std::uint64_t z) : n_(n), x_(x), z_(z) {}
  int n_ = 0;
  std::uint64_t x_ = 0;
  std::uint64_t z_ = 0;
};

/// Result of a Pauli-string product: phase * string == p * q exactly,
/// with phase one of {+1, -1, +i, -i}.
struct PauliProduct {
  std::complex<double> phase;
  PauliString string;
};

/// Exact product of two Pauli strings. Throws std::invalid_argument on
/// mismatched qubit counts.
PauliProduct pauli_mul(const PauliString& p, const PauliString& q);

/// Dense 2^n x 2^n matrix as the Kronecker product over qubits, qubit 1
/// being the leftmost factor. Oracle support only; n_qubits <= 10.
Eigen::MatrixXcd pauli_matrix(const PauliString& p);

struct PauliTerm {
  double coefficient;
  PauliString string;
};

/// Weighted sum of Pauli strings with real coefficients and no duplicate
/// strings (add() merges). Hamiltonians in scope are real symmetric, so real
/// coefficients suffice.
class PauliSum {
 public:
  explicit PauliSum(int n_qubits) : n_(n_qubits) {}

  int n_qubits() const { return n_; }
  std::size_t size() const { return terms_.size(); }
  const std::vector<PauliTerm>& terms() const { return terms_; }

  /// Add coefficient * string, merging with an existing identical string.
  void add(double coefficient, const PauliString& string);

 private:
  int n_;
  std::vector<PauliTerm> terms_;
};

/// Dimension of the real span of the repeated-commutator closure of
/// {i P : P in pool}. Exact fixpoint computation on string identity; no
/// floating-point rank decisions. Pool must be nonempty with n_qubits <= 5.
int lie_closure_dim(std::span<const PauliString> pool);

}  // namespace qadapt
