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

#include "qadapt/adapt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qadapt {

void AdaptConfig::validate() const {
  if (grad_threshold <= 0.0 || bfgs_tol <= 0.0 || stagnation_eps <= 0.0 ||
      stagnation_window <= 0 || max_iterations < 0) {
    throw std::invalid_argument("AdaptConfig: tolerances must be positive");
  }
}

EigenResult exact_diagonalize(const Eigen::MatrixXd& h) {
  if (h.rows() != h.cols() || h.rows() < 1 || h.rows() > 256) {
    throw std::invalid_argument("exact_diagonalize: need square N <= 256");
  }
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("exact_diagonalize: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("exact_diagonalize: eigensolver failed");
  }
  return {solver.eigenvalues(), solver.eigenvectors()};
}

EigenResult exact_diagonalize(const HamiltonianMatrix& h) {
  return exact_diagonalize(h.entries());
}

GershgorinBounds gershgorin_bounds(const Eigen::MatrixXd& h) {
  GershgorinBounds bounds{h(0, 0), h(0, 0)};
  for (Eigen::Index i = 0; i < h.rows(); ++i) {
    double radius = 0.0;
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      if (j != i) radius += std::abs(h(i, j));
    }
    bounds.lower = std::min(bounds.lower, h(i, i) - radius);
    bounds.upper = std::max(bounds.upper, h(i, i) + radius);
  }
  return bounds;
}

double vqd_beta(const HamiltonianMatrix& h) {
  const GershgorinBounds b = gershgorin_bounds(h.entries());
  return 2.0 * (b.upper - b.lower);
}

namespace {

AdaptResult adapt_run_impl(const Observable& obs,
                           const Eigen::MatrixXd& dense_for_ed,
                           const OperatorPool& pool, AdaptConfig cfg,
                           std::vector<DeflationTerm> deflation,
                           std::uint64_t reference_index) {
  cfg.validate();
  if (!pool.verified) {
    throw std::invalid_argument("adapt_run: pool is not verified");
  }
  if (pool.n_qubits != obs.n_qubits()) {
    throw std::invalid_argument("adapt_run: pool/Hamiltonian qubit mismatch");
  }
  const int n = obs.n_qubits();
  const int max_iters =
      cfg.max_iterations > 0 ? cfg.max_iterations : 2 * (1 << n);

  // The ED level this run targets: with k converged states deflated away the
  // deflated objective bottoms out at the (k+1)-th lowest eigenvalue.
  const EigenResult ed = exact_diagonalize(dense_for_ed);
  const Eigen::Index target_index = std::min<Eigen::Index>(
      static_cast<Eigen::Index>(deflation.size()), ed.eigenvalues.size() - 1);
  const double ed_target = ed.eigenvalues(target_index);

  AdaptResult result;
  result.ed_target = ed_target;
  result.ansatz = Ansatz{n, reference_index, {}};

  double energy =
      energy_and_gradient(result.ansatz, obs, deflation).energy;
  result.final_energy = energy;

  int stagnant = 0;
  for (int iter = 1; iter <= max_iters; ++iter) {
    const StateVector psi = prepare(result.ansatz);
    const SelectionResult sel =
        select_operator(psi, obs, deflation, pool, cfg.grad_threshold);
    if (!sel.index.has_value()) {
      result.converged = true;
      break;
    }

    result.ansatz.ops.push_back({pool.members[*sel.index], 0.0});
    std::vector<double> theta;
    theta.reserve(result.ansatz.ops.size());
    for (const auto& op : result.ansatz.ops) theta.push_back(op.angle);

    auto objective = [&](const std::vector<double>& xs,
                         std::vector<double>& grad) {
      Ansatz trial = result.ansatz;
      for (std::size_t i = 0; i < xs.size(); ++i) trial.ops[i].angle = xs[i];
      EnergyGradient eg = energy_and_gradient(trial, obs, deflation);
      grad = std::move(eg.gradient);
      return eg.energy;
    };
    const BfgsOutcome outcome = bfgs_minimize(objective, theta, cfg.bfgs_tol);
    result.bfgs_evaluations += outcome.evaluations;
    for (std::size_t i = 0; i < outcome.x.size(); ++i) {
      result.ansatz.ops[i].angle = outcome.x[i];
    }

    const double previous = energy;
    energy = outcome.value;
    result.final_energy = energy;
    result.trace.push_back({iter, pool.members[*sel.index], sel.norm, energy,
                            std::abs(energy - ed_target)});

    if (previous - energy < cfg.stagnation_eps) {
      if (++stagnant >= cfg.stagnation_window) {
        result.converged = false;
        return result;
      }
    } else {
      stagnant = 0;
    }
  }
  if (!result.converged && static_cast<int>(result.trace.size()) >= max_iters) {
    // Iteration cap: one final gradient check so a run that lands exactly on
    // an eigenstate at the cap still counts as converged.
    const StateVector psi = prepare(result.ansatz);
    const SelectionResult sel =
        select_operator(psi, obs, deflation, pool, cfg.grad_threshold);
    result.converged = !sel.index.has_value();
  }
  return result;
}

}  // namespace

AdaptResult adapt_run(const HamiltonianMatrix& h, const OperatorPool& pool,
                      const AdaptConfig& cfg,
                      std::vector<DeflationTerm> deflation,
                      std::uint64_t reference_index) {
  const int dim = h.dim();
  if (dim < 4 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument(
        "adapt_run: dimension must be 2^n with n >= 2; apply "
        "pad_to_power_of_two first");
  }
  const Observable obs(h.entries());
  return adapt_run_impl(obs, h.entries(), pool, cfg, std::move(deflation),
                        reference_index);
}

AdaptResult adapt_run(const PauliSum& h, const OperatorPool& pool,
                      const AdaptConfig& cfg,
                      std::vector<DeflationTerm> deflation,
                      std::uint64_t reference_index) {
  const Eigen::MatrixXd dense = pauli_reconstruct(h);
  const Observable obs(h);
  return adapt_run_impl(obs, dense, pool, cfg, std::move(deflation),
                        reference_index);
}

std::vector<AdaptResult> vqd_run(const HamiltonianMatrix& h,
                                 const OperatorPool& pool,
                                 const AdaptConfig& cfg, int g) {
  if (g < 1) throw std::invalid_argument("vqd_run: need g >= 1");
  const int dim = h.dim();
  if (dim < 4 || (dim & (dim - 1)) != 0) {
    throw std::invalid_argument(
        "vqd_run: dimension must be 2^n with n >= 2; apply "
        "pad_to_power_of_two first");
  }

  const PauliSum encoded = pauli_decompose(h);
  const Observable obs(encoded);
  const double beta = vqd_beta(h);
  const auto& dense = h.entries();

  std::vector<AdaptResult> results;
  std::vector<DeflationTerm> deflation;
  for (int k = 0; k < g; ++k) {
    // Reference: basis state minimizing the deflated diagonal.
    std::uint64_t ref = 0;
    double best = std::numeric_limits<double>::infinity();
    for (Eigen::Index j = 0; j < dim; ++j) {
      double value = dense(j, j);
      for (const auto& t : deflation) {
        value += t.beta * std::norm(t.state.amplitudes()(j));
      }
      if (value < best) {
        best = value;
        ref = static_cast<std::uint64_t>(j);
      }
    }

    AdaptResult run =
        adapt_run_impl(obs, dense, pool, cfg, deflation, ref);
    if (run.converged) {
      deflation.push_back({beta, prepare(run.ansatz)});
    }
    results.push_back(std::move(run));
  }
  return results;
}

}  // namespace qadapt
