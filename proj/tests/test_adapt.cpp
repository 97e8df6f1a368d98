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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "oracles.hpp"
#include "qadapt/adapt.hpp"

using namespace qadapt;
using namespace qadapt::testing;

TEST_CASE("exact diagonalization basics") {
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  const EigenResult r = exact_diagonalize(x);
  CHECK(r.eigenvalues(0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(r.eigenvalues(1) == doctest::Approx(1.0).epsilon(1e-14));

  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(3, 3);
  d.diagonal() << 2.0, -1.0, 0.5;
  const EigenResult rd = exact_diagonalize(d);
  CHECK(rd.eigenvalues(0) == -1.0);
  CHECK(rd.eigenvalues(1) == 0.5);
  CHECK(rd.eigenvalues(2) == 2.0);
}

TEST_CASE("residual and orthogonality invariants on a random 32x32") {
  SplitMix64 rng(101);
  const Eigen::MatrixXd h = random_symmetric(32, rng);
  const EigenResult r = exact_diagonalize(h);
  const double scale = h.norm();
  for (int k = 0; k < 32; ++k) {
    const Eigen::VectorXd v = r.eigenvectors.col(k);
    CHECK((h * v - r.eigenvalues(k) * v).norm() < 1e-10 * scale);
  }
  const Eigen::MatrixXd gram =
      r.eigenvectors.transpose() * r.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(32, 32)).cwiseAbs().maxCoeff() <
        1e-10);
  // Ascending order.
  for (int k = 1; k < 32; ++k) CHECK(r.eigenvalues(k) >= r.eigenvalues(k - 1));
}

TEST_CASE("asymmetric input is a precondition error") {
  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 0, 0;
  CHECK_THROWS_AS(exact_diagonalize(bad), std::invalid_argument);
}

TEST_CASE("gershgorin bounds enclose the spectrum") {
  SplitMix64 rng(103);
  const Eigen::MatrixXd h = random_symmetric(16, rng);
  const GershgorinBounds b = gershgorin_bounds(h);
  const EigenResult r = exact_diagonalize(h);
  CHECK(b.lower <= r.eigenvalues(0));
  CHECK(b.upper >= r.eigenvalues(15));
}

TEST_CASE("diagonal Hamiltonian with the minimizing reference: 0 iterations") {
  const OperatorPool pool = minimal_pool(2, 4);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
  h.diagonal() << 0.7, -0.4, 1.2, 3.0;
  const AdaptResult res =
      adapt_run(HamiltonianMatrix(h), pool, AdaptConfig{}, {}, 1);
  CHECK(res.converged);
  CHECK(res.trace.empty());
  CHECK(res.final_energy == doctest::Approx(-0.4).epsilon(1e-14));
}

TEST_CASE("single off-diagonal block converges in one iteration") {
  // [[0,1],[1,0]] embedded at two qubits per the padding rules: the pool
  // operator acting as Y on the active qubit reaches E = -1 at theta = pi/4.
  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  const HamiltonianMatrix padded =
      pad_to_power_of_two(HamiltonianMatrix(x), 4);
  REQUIRE(padded.dim() == 4);

  const OperatorPool pool = minimal_pool(2, 4);
  const AdaptResult res =
      adapt_run(padded, pool, AdaptConfig{}, {}, 0);
  CHECK(res.converged);
  REQUIRE(res.trace.size() == 1);
  CHECK(res.final_energy == doctest::Approx(-1.0).epsilon(1e-10));
  REQUIRE(res.ansatz.ops.size() == 1);
  const double theta = res.ansatz.ops[0].angle;
  CHECK(std::abs(std::abs(theta) - 0.7853981633974483) < 1e-6);
}

TEST_CASE("seeded random 16x16 reaches the ED ground state") {
  SplitMix64 rng(107);
  const Eigen::MatrixXd h = random_symmetric(16, rng);
  const HamiltonianMatrix hm(h);
  const OperatorPool pool = minimal_pool(4, 6);
  const AdaptResult res = adapt_run(hm, pool, AdaptConfig{}, {}, 0);
  const EigenResult ed = exact_diagonalize(hm);
  CHECK(res.converged);
  CHECK(static_cast<int>(res.trace.size()) <= 32);
  CHECK(std::abs(res.final_energy - ed.eigenvalues(0)) < 1e-8);

  // Variational monotonicity within slack.
  for (std::size_t i = 1; i < res.trace.size(); ++i) {
    CHECK(res.trace[i].energy <= res.trace[i - 1].energy + 1e-12);
  }

  // Odd-Y pool generators keep the state real throughout.
  const StateVector final_state = prepare(res.ansatz);
  CHECK(final_state.amplitudes().imag().cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("PauliSum route agrees with the dense route") {
  SplitMix64 rng(109);
  const Eigen::MatrixXd h = random_symmetric(8, rng);
  const HamiltonianMatrix hm(h);
  const PauliSum sum = pauli_decompose(hm);
  const OperatorPool pool = minimal_pool(3, 4);
  const AdaptResult dense = adapt_run(hm, pool, AdaptConfig{}, {}, 0);
  const AdaptResult encoded = adapt_run(sum, pool, AdaptConfig{}, {}, 0);
  CHECK(dense.converged);
  CHECK(encoded.converged);
  CHECK(std::abs(dense.final_energy - encoded.final_energy) < 1e-9);
}

TEST_CASE("vqd on a decoupled diagonal returns the diagonal") {
  const OperatorPool pool = minimal_pool(2, 4);
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(4, 4);
  h.diagonal() << 0.0, 1.0, 2.0, 3.0;
  const auto states = vqd_run(HamiltonianMatrix(h), pool, AdaptConfig{}, 4);
  REQUIRE(states.size() == 4);
  for (int k = 0; k < 4; ++k) {
    CHECK(states[static_cast<std::size_t>(k)].converged);
    CHECK(states[static_cast<std::size_t>(k)].final_energy ==
          doctest::Approx(static_cast<double>(k)).epsilon(1e-10));
  }
}

TEST_CASE("vqd g = 1 equals a plain run") {
  SplitMix64 rng(113);
  const Eigen::MatrixXd h = random_symmetric(8, rng);
  const HamiltonianMatrix hm(h);
  const OperatorPool pool = minimal_pool(3, 4);
  const auto states = vqd_run(hm, pool, AdaptConfig{}, 1);
  REQUIRE(states.size() == 1);

  // Same reference rule as vqd uses for the first state.
  Eigen::Index ref = 0;
  hm.entries().diagonal().minCoeff(&ref);
  const PauliSum sum = pauli_decompose(hm);
  const AdaptResult direct = adapt_run(sum, pool, AdaptConfig{}, {},
                                       static_cast<std::uint64_t>(ref));
  CHECK(states[0].final_energy ==
        doctest::Approx(direct.final_energy).epsilon(1e-12));
}

TEST_CASE("vqd recovers the four lowest states of a random 16x16") {
  SplitMix64 rng(127);
  const Eigen::MatrixXd h = random_symmetric(16, rng);
  const HamiltonianMatrix hm(h);
  const OperatorPool pool = minimal_pool(4, 6);
  const auto states = vqd_run(hm, pool, AdaptConfig{}, 4);
  const EigenResult ed = exact_diagonalize(hm);
  REQUIRE(states.size() == 4);

  std::vector<StateVector> finals;
  for (int k = 0; k < 4; ++k) {
    const auto& res = states[static_cast<std::size_t>(k)];
    CHECK(res.converged);
    CHECK(std::abs(res.final_energy - ed.eigenvalues(k)) < 1e-6);
    finals.push_back(prepare(res.ansatz));
  }
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < i; ++j) {
      CHECK(std::norm(overlap(finals[static_cast<std::size_t>(i)],
                              finals[static_cast<std::size_t>(j)])) < 1e-6);
    }
  }
  // Deflation residue at convergence.
  const double beta = vqd_beta(hm);
  for (int i = 1; i < 4; ++i) {
    double penalty = 0.0;
    for (int j = 0; j < i; ++j) {
      penalty += beta * std::norm(overlap(finals[static_cast<std::size_t>(j)],
                                          finals[static_cast<std::size_t>(i)]));
    }
    CHECK(penalty < 1e-8);
  }
}

TEST_CASE("an exhausted pool stops with a vanishing pool gradient") {
  // Only qubit-1 generators for a Hamiltonian needing qubit-2 moves: the
  // reachable manifold bottoms out above the true ground state and the pool
  // gradient vanishes there.
  OperatorPool pool;
  pool.n_qubits = 2;
  pool.members = {PauliString::from_text("YI")};
  pool.verified = true;  // test fixture: deliberately incomplete pool

  Eigen::MatrixXd h = pauli_matrix(PauliString::from_text("IX")).real() +
                      pauli_matrix(PauliString::from_text("XI")).real();
  AdaptConfig cfg;
  cfg.max_iterations = 40;
  const AdaptResult res = adapt_run(HamiltonianMatrix(h), pool, cfg, {}, 0);
  CHECK(res.converged);  // converged with respect to the pool only
  CHECK(res.final_energy == doctest::Approx(-1.0).epsilon(1e-8));
  const EigenResult ed = exact_diagonalize(h);
  CHECK(res.final_energy > ed.eigenvalues(0) + 0.5);
}

TEST_CASE("stagnation guard aborts a run that stops improving") {
  // With the stagnation epsilon far above any possible improvement, every
  // iteration counts as stagnant and the guard must abort after the window.
  SplitMix64 rng(131);
  const Eigen::MatrixXd h = random_symmetric(16, rng);
  const OperatorPool pool = minimal_pool(4, 4);
  AdaptConfig cfg;
  cfg.stagnation_eps = 1e9;
  cfg.stagnation_window = 3;
  const AdaptResult res = adapt_run(HamiltonianMatrix(h), pool, cfg, {}, 0);
  CHECK_FALSE(res.converged);
  CHECK(static_cast<int>(res.trace.size()) == 3);
}

TEST_CASE("invalid configuration is rejected") {
  const OperatorPool pool = minimal_pool(2, 2);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(4, 4);
  AdaptConfig cfg;
  cfg.grad_threshold = 0.0;
  CHECK_THROWS_AS(adapt_run(HamiltonianMatrix(h), pool, cfg, {}, 0),
                  std::invalid_argument);
}
