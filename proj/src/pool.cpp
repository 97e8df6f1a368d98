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

#include "qadapt/pool.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "qadapt/bfgs.hpp"
#include "qadapt/rng.hpp"

namespace qadapt {

namespace {

constexpr double kFidelityTarget = 1.0 - 1e-6;
constexpr int kRestarts = 3;

// <bra| P |ket> for the selection rule, without scratch storage.
std::complex<double> bra_pauli_ket(const Eigen::VectorXcd& bra,
                                   const PauliString& p,
                                   const Eigen::VectorXcd& ket) {
  static constexpr std::complex<double> kIPow[4] = {
      {1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const std::uint64_t x = p.x_mask();
  const std::uint64_t z = p.z_mask();
  const std::complex<double> head = kIPow[p.y_count() & 3];
  std::complex<double> acc = 0.0;
  const std::uint64_t dim = static_cast<std::uint64_t>(ket.size());
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ x;
    const double sgn = (std::popcount(z & j) & 1) ? -1.0 : 1.0;
    acc += std::conj(bra(static_cast<Eigen::Index>(i))) * sgn *
           ket(static_cast<Eigen::Index>(j));
  }
  return head * acc;
}

StateVector random_real_unit_state(int n_qubits, SplitMix64& rng) {
  const Eigen::Index dim = static_cast<Eigen::Index>(1) << n_qubits;
  Eigen::VectorXcd amps(dim);
  double norm2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < dim; ++i) amps(i) = rng.normal();
    norm2 = amps.squaredNorm();
  } while (norm2 < 1e-12);
  amps /= std::sqrt(norm2);
  return StateVector::from_amplitudes(n_qubits, std::move(amps));
}

// Greedy fidelity maximization toward `target`. The objective is the usual
// deflated energy with H = 0 and a single beta = -1 term, so
// E = -|<target|psi>|^2 and the standard selection rule applies unchanged.
double grow_to_target(const OperatorPool& pool, const StateVector& target,
                      int attempt, SplitMix64& rng) {
  const int n = pool.n_qubits;
  const Eigen::Index dim = static_cast<Eigen::Index>(1) << n;
  const Eigen::MatrixXd zero = Eigen::MatrixXd::Zero(dim, dim);
  const Observable obs(zero);
  const std::vector<DeflationTerm> deflation = {{-1.0, target}};

  // Reference: the basis state with the largest target amplitude.
  Eigen::Index ref = 0;
  target.amplitudes().cwiseAbs().maxCoeff(&ref);

  Ansatz ansatz{n, static_cast<std::uint64_t>(ref), {}};
  double fidelity =
      std::norm(overlap(target, prepare(ansatz)));

  // Bypass the verified-pool gate: this growth *is* the verification.
  OperatorPool probe = pool;
  probe.verified = true;

  const int max_rounds = 4 * static_cast<int>(dim);
  for (int round = 0; round < max_rounds; ++round) {
    if (fidelity >= kFidelityTarget) return fidelity;

    const StateVector psi = prepare(ansatz);
    const SelectionResult sel =
        select_operator(psi, obs, deflation, probe, 1e-9);
    if (!sel.index.has_value()) break;  // flat landscape, restart

    const double init =
        attempt == 0 ? 0.0 : rng.uniform(-0.3, 0.3);
    ansatz.ops.push_back({pool.members[*sel.index], init});

    std::vector<double> theta;
    theta.reserve(ansatz.ops.size());
    for (const auto& op : ansatz.ops) theta.push_back(op.angle);

    auto objective = [&](const std::vector<double>& xs,
                         std::vector<double>& grad) {
      Ansatz trial = ansatz;
      for (std::size_t i = 0; i < xs.size(); ++i) trial.ops[i].angle = xs[i];
      EnergyGradient eg = energy_and_gradient(trial, obs, deflation);
      grad = eg.gradient;
      return eg.energy;
    };
    const BfgsOutcome outcome = bfgs_minimize(objective, theta, 1e-7);
    for (std::size_t i = 0; i < outcome.x.size(); ++i) {
      ansatz.ops[i].angle = outcome.x[i];
    }
    fidelity = -outcome.value;
  }
  return fidelity;
}

}  // namespace

std::vector<PauliString> pool_family(int family, int n) {
  if (n < 2) throw std::invalid_argument("pool_family: need n >= 2");
  std::vector<PauliString> members;
  auto zy = [&](int j, int k) {
    std::uint64_t zbit = 1ULL << (n - j);
    std::uint64_t ybit = 1ULL << (n - k);
    return PauliString::from_masks(n, ybit, zbit | ybit);
  };
  switch (family) {
    case 1:
      for (int k = 1; k <= n - 1; ++k)
        members.push_back(PauliString::single(n, k, 'Y'));
      for (int k = 1; k <= n - 1; ++k) members.push_back(zy(k, k + 1));
      break;
    case 2:
      for (int k = 1; k <= n - 1; ++k) members.push_back(zy(k + 1, k));
      for (int k = 2; k <= n; ++k)
        members.push_back(PauliString::single(n, k, 'Y'));
      break;
    case 3:
      for (int k = 1; k <= n; ++k)
        members.push_back(PauliString::single(n, k, 'Y'));
      for (int j = 1; j <= n; ++j) {
        for (int k = 1; k <= n; ++k) {
          if (j != k) members.push_back(zy(j, k));
        }
      }
      break;
    default:
      throw std::invalid_argument("pool_family: unknown family");
  }
  return members;
}

PoolVerification verify_pool(const OperatorPool& pool, int trials,
                             std::uint64_t seed) {
  if (pool.n_qubits > 4) {
    throw std::invalid_argument("verify_pool: verification scale is n <= 4");
  }
  if (pool.members.empty()) {
    throw std::invalid_argument("verify_pool: empty pool");
  }
  PoolVerification result;
  result.closure_dim = lie_closure_dim(pool.members);
  result.passed = true;

  SplitMix64 rng(seed);
  for (int t = 0; t < trials; ++t) {
    const StateVector target = random_real_unit_state(pool.n_qubits, rng);
    double best = 0.0;
    for (int attempt = 0; attempt < kRestarts; ++attempt) {
      best = std::max(best, grow_to_target(pool, target, attempt, rng));
      if (best >= kFidelityTarget) break;
    }
    result.fidelities.push_back(best);
    if (best < kFidelityTarget) result.passed = false;
  }
  return result;
}

OperatorPool minimal_pool(int n_qubits, int trials, std::uint64_t seed) {
  if (n_qubits < 2) {
    throw std::invalid_argument("minimal_pool: need n >= 2");
  }
  const int cert_n = std::min(n_qubits, 4);
  for (int family = 1; family <= 3; ++family) {
    OperatorPool probe;
    probe.n_qubits = cert_n;
    probe.members = pool_family(family, cert_n);
    probe.family = family;
    const PoolVerification v = verify_pool(probe, trials, seed);
    if (!v.passed) continue;

    OperatorPool pool;
    pool.n_qubits = n_qubits;
    pool.members =
        cert_n == n_qubits ? probe.members : pool_family(family, n_qubits);
    pool.family = family;
    pool.verified = true;
    pool.closure_dim =
        cert_n == n_qubits
            ? v.closure_dim
            : (n_qubits <= 5 ? lie_closure_dim(pool.members) : -1);
    return pool;
  }
  throw std::runtime_error(
      "minimal_pool: no catalog family passed verification");
}

SelectionResult select_operator(const StateVector& state, const Observable& h,
                                std::span<const DeflationTerm> deflation,
                                const OperatorPool& pool, double threshold) {
  if (!pool.verified) {
    throw std::invalid_argument("select_operator: pool is not verified");
  }
  StateVector lambda = state;
  h.apply(state, lambda);
  for (const auto& term : deflation) {
    const std::complex<double> ov = overlap(term.state, state);
    lambda.amplitudes() += term.beta * ov * term.state.amplitudes();
  }

  SelectionResult result;
  result.gradients.reserve(pool.members.size());
  double norm2 = 0.0;
  for (const auto& member : pool.members) {
    const std::complex<double> v =
        bra_pauli_ket(lambda.amplitudes(), member, state.amplitudes());
    const double g = -2.0 * v.imag();  // i <[H_eff, P_k]>
    result.gradients.push_back(g);
    norm2 += g * g;
  }
  result.norm = std::sqrt(norm2);

  std::size_t best = 0;
  double best_mag = -1.0;
  for (std::size_t k = 0; k < result.gradients.size(); ++k) {
    const double mag = std::abs(result.gradients[k]);
    if (mag > best_mag) {
      best_mag = mag;
      best = k;
    }
  }
  if (result.norm >= threshold && !pool.members.empty()) {
    result.index = best;
  }
  return result;
}

}  // namespace qadapt
