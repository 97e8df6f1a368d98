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

#include <string>
#include <utility>

#include <Eigen/Dense>

#include "qadapt/pauli.hpp"

namespace qadapt {

/// Real symmetric N x N Hamiltonian matrix in Hartree units, the hand-off
/// object between the classical integral code and the qubit pipeline.
/// Symmetry is enforced at construction by symmetrization, so
/// h(i,j) == h(j,i) holds bitwise afterwards.
class HamiltonianMatrix {
 public:
  struct Metadata {
    double internuclear_distance = 0.0;  // R, bohr; 0 when not applicable
    std::string symmetry;                // e.g. "singlet"
    std::string basis;                   // free-form description
  };

  explicit HamiltonianMatrix(Eigen::MatrixXd entries)
      : HamiltonianMatrix(std::move(entries), Metadata()) {}
  HamiltonianMatrix(Eigen::MatrixXd entries, Metadata meta);

  int dim() const { return static_cast<int>(m_.rows()); }
  const Eigen::MatrixXd& entries() const { return m_; }
  const Metadata& metadata() const { return meta_; }
  double max_diagonal() const { return m_.diagonal().maxCoeff(); }

 private:
  Eigen::MatrixXd m_;
  Metadata meta_;
};

/// Binary encoding: coefficients c_P = Tr(P H) / 2^n over all n-qubit Pauli
/// strings; terms below 1e-12 in magnitude are dropped. For real symmetric
/// input every odd-Y coefficient vanishes identically and is skipped.
/// Requires dim == 2^n (see pad_to_power_of_two).
PauliSum pauli_decompose(const HamiltonianMatrix& h);

/// Inverse of the encoding, used as a round-trip oracle: sum of
/// coefficient * pauli_matrix over terms. The imaginary residue must stay
/// below 1e-12 everywhere (consistency error otherwise); it is discarded
/// after the check. Limited to 8 qubits.
Eigen::MatrixXd pauli_reconstruct(const PauliSum& s);

/// Coefficient magnitude below which encoded terms are dropped.
inline constexpr double kEncodeDropThreshold = 1e-12;

/// Embed the matrix into the next power-of-two dimension. Padding states get
/// diagonal value max_i h_ii + 10 Ha and no coupling, so spurious levels sit
/// above the physical region of interest. Identity when dim is already 2^n.
/// `min_dim` (a power of two) raises the target, e.g. to reach the 2-qubit
/// minimum required by operator pools.
HamiltonianMatrix pad_to_power_of_two(const HamiltonianMatrix& h,
                                      int min_dim = 1);

/// Diagonal value assigned to padding states.
double padding_level(const HamiltonianMatrix& h);

}  // namespace qadapt
