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

#include "qadapt/sim.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

namespace qadapt {

namespace {

constexpr std::complex<double> kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

double check_real(std::complex<double> value, const char* what) {
  if (std::abs(value.imag()) >= 1e-12) {
    throw std::runtime_error(std::string(what) +
                             ": imaginary part exceeds 1e-12");
  }
  return value.real();
}

// <bra| P |ket> without materializing P|ket>.
std::complex<double> bra_pauli_ket(const Eigen::VectorXcd& bra,
                                   const PauliString& p,
                                   const Eigen::VectorXcd& ket) {
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const std::complex<double> head = kIPow[p.y_count() & 3];
  const std::uint64_t dim = static_cast<std::uint64_t>(ket.size());
  std::complex<double> acc = 0.0;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t src = i ^ x;
    const double sgn = (std::popcount(z & src) & 1) ? -1.0 : 1.0;
    acc += std::conj(bra(static_cast<Eigen::Index>(i))) * sgn *
           ket(static_cast<Eigen::Index>(src));
  }
  return head * acc;
}

}  // namespace

StateVector StateVector::basis_state(int n_qubits, std::uint64_t index) {
  if (n_qubits < 1 || n_qubits > 30) {
    throw std::invalid_argument("StateVector: unsupported qubit count");
  }
  const std::uint64_t dim = 1ULL << n_qubits;
  if (index >= dim) {
    throw std::invalid_argument("StateVector: basis index out of range");
  }
  Eigen::VectorXcd amps =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(dim));
  amps(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(n_qubits, std::move(amps));
}

StateVector StateVector::from_amplitudes(int n_qubits, Eigen::VectorXcd amps) {
  if (amps.size() != static_cast<Eigen::Index>(1ULL << n_qubits)) {
    throw std::invalid_argument("StateVector: amplitude size mismatch");
  }
  return StateVector(n_qubits, std::move(amps));
}

void apply_pauli(const PauliString& p, const StateVector& in,
                 StateVector& out) {
  if (p.n_qubits() != in.n_qubits()) {
    throw std::invalid_argument("apply_pauli: qubit count mismatch");
  }
  if (&in == &out) {
    throw std::invalid_argument("apply_pauli: in and out must not alias");
  }
  out = in;
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const std::complex<double> head = kIPow[p.y_count() & 3];
  const std::uint64_t dim = in.dim();
  auto& dst = out.amplitudes();
  const auto& src = in.amplitudes();
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ x;
    const double sgn = (std::popcount(z & j) & 1) ? -1.0 : 1.0;
    dst(static_cast<Eigen::Index>(i)) =
        head * sgn * src(static_cast<Eigen::Index>(j));
  }
}

void apply_pauli_rotation(StateVector& state, const PauliString& p,
                          double theta) {
  if (p.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("apply_pauli_rotation: qubit count mismatch");
  }
  const double c = std::cos(theta);
  const std::complex<double> is(0.0, std::sin(theta));
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const std::complex<double> head = kIPow[p.y_count() & 3];
  auto& amps = state.amplitudes();
  const std::uint64_t dim = state.dim();

  if (x == 0) {
    // Diagonal string: per-amplitude phase only.
    for (std::uint64_t i = 0; i < dim; ++i) {
      const double sgn = (std::popcount(z & i) & 1) ? -1.0 : 1.0;
      amps(static_cast<Eigen::Index>(i)) *= c + is * sgn;
    }
    return;
  }
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ x;
    if (j < i) continue;  // handle each pair once
    const double sgn_i = (std::popcount(z & j) & 1) ? -1.0 : 1.0;
    const double sgn_j = (std::popcount(z & i) & 1) ? -1.0 : 1.0;
    const auto ai = amps(static_cast<Eigen::Index>(i));
    const auto aj = amps(static_cast<Eigen::Index>(j));
    amps(static_cast<Eigen::Index>(i)) = c * ai + is * head * sgn_i * aj;
    amps(static_cast<Eigen::Index>(j)) = c * aj + is * head * sgn_j * ai;
  }
}

StateVector prepare(const Ansatz& a) {
  StateVector state = StateVector::basis_state(a.n_qubits, a.reference_index);
  for (const auto& [op, angle] : a.ops) {
    apply_pauli_rotation(state, op, angle);
  }
  return state;
}

Observable::Observable(const PauliSum& sum)
    : sum_(&sum), n_(sum.n_qubits()) {}

Observable::Observable(const Eigen::MatrixXd& dense) : dense_(&dense) {
  const auto dim = dense.rows();
  if (dim != dense.cols() || dim < 2 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument(
        "Observable: dense matrix dimension must be 2^n");
  }
  n_ = std::countr_zero(static_cast<unsigned long long>(dim));
}

void Observable::apply(const StateVector& in, StateVector& out) const {
  if (in.n_qubits() != n_) {
    throw std::invalid_argument("Observable::apply: qubit count mismatch");
  }
  if (dense_ != nullptr) {
    Eigen::VectorXcd result = (*dense_) * in.amplitudes();
    out = StateVector::from_amplitudes(n_, std::move(result));
    return;
  }
  Eigen::VectorXcd acc =
      Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(in.dim()));
  const auto& src = in.amplitudes();
  const std::uint64_t dim = in.dim();
  for (const auto& term : sum_->terms()) {
    const std::uint64_t x = term.string.x_mask();
    const std::uint64_t z = term.string.z_mask();
    const std::complex<double> head =
        term.coefficient * kIPow[term.string.y_count() & 3];
    for (std::uint64_t i = 0; i < dim; ++i) {
      const std::uint64_t j = i ^ x;
      const double sgn = (std::popcount(z & j) & 1) ? -1.0 : 1.0;
      acc(static_cast<Eigen::Index>(i)) +=
          head * sgn * src(static_cast<Eigen::Index>(j));
    }
  }
  out = StateVector::from_amplitudes(n_, std::move(acc));
}

double Observable::expectation(const StateVector& state) const {
  if (dense_ != nullptr) return qadapt::expectation(state, *dense_);
  return qadapt::expectation(state, *sum_);
}

double expectation(const StateVector& state, const PauliSum& h) {
  if (h.n_qubits() != state.n_qubits()) {
    throw std::invalid_argument("expectation: qubit count mismatch");
  }
  std::complex<double> acc = 0.0;
  for (const auto& term : h.terms()) {
    acc += term.coefficient *
           bra_pauli_ket(state.amplitudes(), term.string, state.amplitudes());
  }
  return check_real(acc, "expectation");
}

double expectation(const StateVector& state, const Eigen::MatrixXd& h) {
  if (h.rows() != static_cast<Eigen::Index>(state.dim()) ||
      h.cols() != h.rows()) {
    throw std::invalid_argument("expectation: dimension mismatch");
  }
  const std::complex<double> value =
      state.amplitudes().dot(h * state.amplitudes());
  return check_real(value, "expectation");
}

std::complex<double> overlap(const StateVector& a, const StateVector& b) {
  if (a.n_qubits() != b.n_qubits()) {
    throw std::invalid_argument("overlap: qubit count mismatch");
  }
  return a.amplitudes().dot(b.amplitudes());
}

EnergyGradient energy_and_gradient(const Ansatz& a, const Observable& h,
                                   std::span<const DeflationTerm> deflation) {
  StateVector psi = prepare(a);

  // Adjoint state lambda = H_eff |psi| with deflation as rank-one additions.
  StateVector lambda = psi;
  h.apply(psi, lambda);
  for (const auto& term : deflation) {
    const std::complex<double> ov = overlap(term.state, psi);
    lambda.amplitudes() += term.beta * ov * term.state.amplitudes();
  }
  const double energy =
      check_real(psi.amplitudes().dot(lambda.amplitudes()),
                 "energy_and_gradient");

  const std::size_t m = a.ops.size();
  std::vector<double> grad(m, 0.0);
  for (std::size_t idx = m; idx-- > 0;) {
    const auto& [op, angle] = a.ops[idx];
    // d E / d theta_j = 2 Re <lambda| i P_j |psi_j> = -2 Im <lambda|P_j|psi_j>
    const std::complex<double> v =
        bra_pauli_ket(lambda.amplitudes(), op, psi.amplitudes());
    grad[idx] = -2.0 * v.imag();
    apply_pauli_rotation(psi, op, -angle);
    apply_pauli_rotation(lambda, op, -angle);
  }
  return {energy, std::move(grad)};
}

}  // namespace qadapt
