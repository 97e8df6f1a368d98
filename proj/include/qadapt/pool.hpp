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

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qadapt/pauli.hpp"
#include "qadapt/sim.hpp"

namespace qadapt {

/// Candidate generator set for the adaptive ansatz. Every member carries an
/// odd number of Y factors, so the generated rotations preserve real state
/// vectors. `verified` records that the operational reachability check
/// passed; the selection rule refuses unverified pools.
struct OperatorPool {
  int n_qubits = 2;
  std::vector<PauliString> members;
  bool verified = false;
  int family = 0;       // catalog index the members came from (1-based)
  int closure_dim = -1; // Lie-closure diagnostic, -1 when not computed
};

/// Fixed catalog of candidate families (identity on unnamed qubits):
///   1: {Y_k : k=1..n-1} + {Z_k Y_{k+1} : k=1..n-1}        (2n-2 members)
///   2: {Y_k Z_{k+1} : k=1..n-1} + {Y_k : k=2..n}          (2n-2 members)
///   3: {Y_k} + {Z_j Y_k, j != k}, the overcomplete fallback (n^2 members)
std::vector<PauliString> pool_family(int family, int n_qubits);

struct PoolVerification {
  bool passed = false;
  int closure_dim = 0;
  std::vector<double> fidelities;  // best fidelity reached per target
};

/// Operational completeness check: for `trials` seeded random real unit
/// targets, grow an ansatz gradient-greedily (at most 4 * 2^n rounds, BFGS
/// re-optimization each round, up to 3 restarts per target) and require
/// final fidelity >= 1 - 1e-6. Also reports the Lie-closure dimension as a
/// diagnostic. Verification scale: n_qubits <= 4.
PoolVerification verify_pool(const OperatorPool& pool, int trials,
                             std::uint64_t seed = 0x51d5eed);

/// First catalog family that passes verify_pool. For n_qubits >= 5 the
/// family is certified at 4 qubits and transferred (the catalog families are
/// translation-regular ladders), since the operational check is limited to
/// verification scale. Throws std::runtime_error if no family verifies.
OperatorPool minimal_pool(int n_qubits, int trials = 10,
                          std::uint64_t seed = 0x51d5eed);

struct SelectionResult {
  std::optional<std::size_t> index;  // empty when norm < threshold
  std::vector<double> gradients;     // i <psi| [H_eff, P_k] |psi>, real
  double norm = 0.0;                 // Euclidean norm of gradients
};

/// ADAPT selection rule: gradient of every pool operator at theta = 0,
/// argmax by magnitude with ties broken toward the lowest index.
SelectionResult select_operator(const StateVector& state, const Observable& h,
                                std::span<const DeflationTerm> deflation,
                                const OperatorPool& pool, double threshold);

}  // namespace qadapt
