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

#include <bit>

#include "oracles.hpp"
#include "qadapt/adapt.hpp"
#include "qadapt/encode.hpp"

using namespace qadapt;
using namespace qadapt::testing;

namespace {

const PauliTerm* find_term(const PauliSum& sum, const char* text) {
  for (const auto& term : sum.terms()) {
    if (term.string.text() == text) return &term;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("single-qubit decompositions") {
  Eigen::MatrixXd z(2, 2);
  z << 1, 0, 0, -1;
  PauliSum sz = pauli_decompose(HamiltonianMatrix(z));
  REQUIRE(sz.size() == 1);
  CHECK(sz.terms()[0].string.text() == "Z");
  CHECK(sz.terms()[0].coefficient == 1.0);

  Eigen::MatrixXd x(2, 2);
  x << 0, 1, 1, 0;
  PauliSum sx = pauli_decompose(HamiltonianMatrix(x));
  REQUIRE(sx.size() == 1);
  CHECK(sx.terms()[0].string.text() == "X");
  CHECK(sx.terms()[0].coefficient == 1.0);

  Eigen::MatrixXd m(2, 2);
  m << -1.0, 0.5, 0.5, -0.3;
  PauliSum sm = pauli_decompose(HamiltonianMatrix(m));
  REQUIRE(sm.size() == 3);
  CHECK(find_term(sm, "I")->coefficient == doctest::Approx(-0.65).epsilon(1e-14));
  CHECK(find_term(sm, "X")->coefficient == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(find_term(sm, "Z")->coefficient == doctest::Approx(-0.35).epsilon(1e-14));
  // Cross-check by dense reconstruction.
  CHECK((pauli_reconstruct(sm) - HamiltonianMatrix(m).entries())
            .cwiseAbs()
            .maxCoeff() < 1e-15);
}

TEST_CASE("reconstruct flags sums with imaginary residue") {
  PauliSum bad(1);
  bad.add(1.0, PauliString::from_text("Y"));  // odd-Y, imaginary matrix
  CHECK_THROWS_AS(pauli_reconstruct(bad), std::runtime_error);
}

TEST_CASE("reconstruct frozen values") {
  PauliSum s(1);
  s.add(1.0, PauliString::from_text("Z"));
  Eigen::MatrixXd m = pauli_reconstruct(s);
  CHECK(m(0, 0) == 1.0);
  CHECK(m(1, 1) == -1.0);
  CHECK(m(0, 1) == 0.0);

  PauliSum empty(2);
  CHECK(pauli_reconstruct(empty).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("round trip on seeded random symmetric matrices") {
  SplitMix64 rng(2024);
  for (int trial = 0; trial < 5; ++trial) {
    const Eigen::MatrixXd h = random_symmetric(16, rng);
    const HamiltonianMatrix hm(h);
    const PauliSum sum = pauli_decompose(hm);
    const Eigen::MatrixXd back = pauli_reconstruct(sum);
    CHECK((back - hm.entries()).cwiseAbs().maxCoeff() < 1e-12);

    // No odd-Y strings survive the encoding of a symmetric matrix.
    for (const auto& term : sum.terms()) {
      CHECK(term.string.y_count() % 2 == 0);
    }
  }
}

TEST_CASE("eigenvalues survive the round trip") {
  SplitMix64 rng(77);
  const Eigen::MatrixXd h = random_symmetric(8, rng);
  const HamiltonianMatrix hm(h);
  const Eigen::MatrixXd back = pauli_reconstruct(pauli_decompose(hm));
  const Eigen::VectorXd before = exact_diagonalize(hm).eigenvalues;
  const Eigen::VectorXd after =
      exact_diagonalize(HamiltonianMatrix(back)).eigenvalues;
  CHECK((before - after).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("non-power-of-two dimensions are rejected with guidance") {
  const Eigen::MatrixXd h = Eigen::MatrixXd::Identity(3, 3);
  CHECK_THROWS_WITH_AS(pauli_decompose(HamiltonianMatrix(h)),
                       doctest::Contains("pad_to_power_of_two"),
                       std::invalid_argument);
}

TEST_CASE("padding rules") {
  SplitMix64 rng(5);
  const Eigen::MatrixXd h4 = random_symmetric(4, rng);
  CHECK(pad_to_power_of_two(HamiltonianMatrix(h4)).entries() ==
        HamiltonianMatrix(h4).entries());

  Eigen::MatrixXd h1(1, 1);
  h1 << -1.0;
  CHECK(pad_to_power_of_two(HamiltonianMatrix(h1)).dim() == 1);

  Eigen::MatrixXd h3(3, 3);
  h3 << -0.9, 0.1, 0.2, 0.1, -0.2, 0.3, 0.2, 0.3, -0.5;
  const HamiltonianMatrix padded = pad_to_power_of_two(HamiltonianMatrix(h3));
  REQUIRE(padded.dim() == 4);
  CHECK(padded.entries()(3, 3) == doctest::Approx(9.8).epsilon(1e-15));
  CHECK(padded.entries()(3, 0) == 0.0);
  CHECK(padded.entries()(0, 3) == 0.0);

  // The physical spectrum is untouched.
  const Eigen::VectorXd small = exact_diagonalize(HamiltonianMatrix(h3)).eigenvalues;
  const Eigen::VectorXd large = exact_diagonalize(padded).eigenvalues;
  for (int i = 0; i < 3; ++i) {
    CHECK(large(i) == doctest::Approx(small(i)).epsilon(1e-14));
  }
  CHECK(large(3) == doctest::Approx(9.8).epsilon(1e-14));

  // min_dim raises the target for the 2-qubit pool minimum.
  Eigen::MatrixXd h2(2, 2);
  h2 << 0, 1, 1, 0;
  CHECK(pad_to_power_of_two(HamiltonianMatrix(h2), 4).dim() == 4);
}

TEST_CASE("asymmetric input is symmetrized at construction") {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, 0.2, 0.4, -1.0;
  const HamiltonianMatrix h(a);
  CHECK(h.entries()(0, 1) == h.entries()(1, 0));
  CHECK(h.entries()(0, 1) == doctest::Approx(0.3).epsilon(1e-15));
}

TEST_CASE("term count stays within the even-Y budget") {
  SplitMix64 rng(999);
  const Eigen::MatrixXd h = random_symmetric(8, rng);
  const PauliSum sum = pauli_decompose(HamiltonianMatrix(h));
  // 4^n strings in total; only even-Y ones can appear.
  int even_y = 0;
  const int n = 3;
  for (int x = 0; x < (1 << n); ++x) {
    for (int z = 0; z < (1 << n); ++z) {
      if (std::popcount(static_cast<unsigned>(x & z)) % 2 == 0) ++even_y;
    }
  }
  CHECK(static_cast<int>(sum.size()) <= even_y);
}
