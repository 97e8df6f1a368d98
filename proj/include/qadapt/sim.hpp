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
#include <vector>

#include <Eigen/Dense>

#include "qadapt/pauli.hpp"

namespace qadapt {

/// Full statevector over n qubits, indexed so that qubit 1 is the most
/// significant bit of the amplitude index.
class StateVector {
 public:
  static StateVector basis_state(int n_qubits, std::uint64_t index);
  static StateVector from_amplitudes(int n_qubits, Eigen::VectorXcd amps);

  int n_qubits() const { return n_; }
  std::uint64_t dim() const { return static_cast<std::uint64_t>(amps_.size()); }
  const Eigen::VectorXcd& amplitudes() const { return amps_; }
  Eigen::VectorXcd& amplitudes() { return amps_; }
  double norm() const { return amps_.norm(); }

 private:
  StateVector(int n, Eigen::VectorXcd a) : n_(n), amps_(std::move(a)) {}
  int n_;
  Eigen::VectorXcd amps_;
};

/// The adaptive trial state: a reference basis state followed by an ordered
/// list of Pauli rotations exp(i theta_j P_j), j = 1 applied first. Repeats
/// of the same string are allowed.
struct AnsatzOp {
  PauliString op;
  double angle = 0.0;
};

struct Ansatz {
  int n_qubits = 1;
  std::uint64_t reference_index = 0;
  std::vector<AnsatzOp> ops;
};

/// out = P |in>   (in and out may not alias)
void apply_pauli(const PauliString& p, const StateVector& in, StateVector& out);

/// |psi> <- exp(i theta P) |psi> = cos(theta) |psi> + i sin(theta) P |psi>.
/// Valid because P^2 = I; one pass over the amplitudes.
void apply_pauli_rotation(StateVector& state, const PauliString& p,
                          double theta);

/// Build [prod_{j=M..1} exp(i theta_j P_j)] |bin(reference_index)>.
StateVector prepare(const Ansatz& a);

/// Non-owning view of either an encoded PauliSum or a dense real symmetric
/// matrix of dimension 2^n; the referenced object must outlive the view.
class Observable {
 public:
  explicit Observable(const PauliSum& sum);
  explicit Observable(const Eigen::MatrixXd& dense);

  int n_qubits() const { return n_; }
  /// out = H |in>
  void apply(const StateVector& in, StateVector& out) const;
  double expectation(const StateVector& state) const;

 private:
  const PauliSum* sum_ = nullptr;
  const Eigen::MatrixXd* dense_ = nullptr;
  int n_;
};

/// <state| H |state>. The imaginary part must be below 1e-12 (consistency
/// error otherwise); it is checked and discarded.
double expectation(const StateVector& state, const PauliSum& h);
double expectation(const StateVector& state, const Eigen::MatrixXd& h);

/// <a|b>, conjugate-linear in a.
std::complex<double> overlap(const StateVector& a, const StateVector& b);

/// One deflation penalty beta * |<phi|psi>|^2 added to the objective.
struct DeflationTerm {
  double beta;
  StateVector state;
};

struct EnergyGradient {
  double energy;
  std::vector<double> gradient;  // dE/d theta_j, length M
};

/// Objective E = <psi|H|psi> + sum_i beta_i |<phi_i|psi>|^2 and its analytic
/// gradient by reverse accumulation: keep the forward state and the adjoint
/// H_eff|psi> (deflation projectors applied as rank-one additions), then
/// un-rotate both through j = M..1 accumulating 2 Re <lambda| i P_j |psi_j>.
/// O(M) rotation applications in total.
EnergyGradient energy_and_gradient(const Ansatz& a, const Observable& h,
                                   std::span<const DeflationTerm> deflation);

}  // namespace qadapt
