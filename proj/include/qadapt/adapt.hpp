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
#include <vector>

#include <Eigen/Dense>

#include "qadapt/bfgs.hpp"
#include "qadapt/encode.hpp"
#include "qadapt/pool.hpp"
#include "qadapt/sim.hpp"

namespace qadapt {

struct AdaptConfig {
  double grad_threshold = 1e-6;  // Ha; stop when the pool-gradient norm drops below
  double bfgs_tol = 1e-7;        // max-abs gradient tolerance per optimization
  int max_iterations = 0;        // 0 resolves to 2 * 2^n at run time
  int stagnation_window = 5;
  double stagnation_eps = 1e-12;

  void validate() const;
};

struct IterationRecord {
  int iteration;        // 1-based
  PauliString op;       // operator appended this iteration
  double grad_norm;     // pool-gradient norm before appending
  double energy;        // objective after optimization (deflated for g > 1)
  double err_vs_ed;     // |energy - target ED eigenvalue|
};

struct AdaptResult {
  std::vector<IterationRecord> trace;
  Ansatz ansatz;
  bool converged = false;
  long bfgs_evaluations = 0;
  double final_energy = 0.0;
  double ed_target = 0.0;  // the ED eigenvalue this run is measured against
};

struct EigenResult {
  Eigen::VectorXd eigenvalues;   // ascending, Ha
  Eigen::MatrixXd eigenvectors;  // orthonormal columns, matching order
};

/// Full spectrum of the (dense, real symmetric) Hamiltonian. Residuals
/// satisfy ||H v - lambda v|| < 1e-10 ||H|| per pair. N <= 256.
EigenResult exact_diagonalize(const HamiltonianMatrix& h);
EigenResult exact_diagonalize(const Eigen::MatrixXd& h);

struct GershgorinBounds {
  double lower;
  double upper;
};
GershgorinBounds gershgorin_bounds(const Eigen::MatrixXd& h);

/// One ADAPT run: select the largest-gradient pool operator, append it at
/// angle zero, re-optimize every angle with BFGS (warm start), repeat until
/// the pool-gradient norm falls below the threshold, the iteration cap is
/// reached, or the energy stagnates. The matrix overload requires dim = 2^n;
/// the PauliSum overload reconstructs the dense form internally for the
/// exact-diagonalization error column.
AdaptResult adapt_run(const HamiltonianMatrix& h, const OperatorPool& pool,
                      const AdaptConfig& cfg,
                      std::vector<DeflationTerm> deflation,
                      std::uint64_t reference_index);
AdaptResult adapt_run(const PauliSum& h, const OperatorPool& pool,
                      const AdaptConfig& cfg,
                      std::vector<DeflationTerm> deflation,
                      std::uint64_t reference_index);

/// Deflation strength used by vqd_run: twice the Gershgorin spectral width,
/// which exceeds the largest spectral gap without diagonalizing.
double vqd_beta(const HamiltonianMatrix& h);

/// Variational quantum deflation: states 1..g in sequence. State k deflates
/// against every previously *converged* state with the vqd_beta strength and
/// starts from the basis state minimizing the deflated diagonal. The ADAPT
/// objective runs on the binary-encoded PauliSum of h. Unconverged runs are
/// flagged; later states are still attempted.
std::vector<AdaptResult> vqd_run(const HamiltonianMatrix& h,
                                 const OperatorPool& pool,
                                 const AdaptConfig& cfg, int g);

}  // namespace qadapt
