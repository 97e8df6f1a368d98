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

#include <cmath>

#include "oracles.hpp"
#include "qadapt/ecbasis.hpp"
#include "qadapt/legendre.hpp"

using namespace qadapt;
using namespace qadapt::testing;

TEST_CASE("ferrers functions at closed-form points") {
  const double x = 0.37;
  const auto p0 = ferrers_plm(0, 4, x);
  CHECK(p0[0] == 1.0);
  CHECK(p0[1] == x);
  CHECK(p0[2] == doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-15));
  CHECK(p0[4] ==
        doctest::Approx((35 * x * x * x * x - 30 * x * x + 3) / 8)
            .epsilon(1e-14));

  const double s = std::sqrt(1 - x * x);
  const auto p1 = ferrers_plm(1, 2, x);
  CHECK(p1[0] == doctest::Approx(s).epsilon(1e-15));        // P_1^1
  CHECK(p1[1] == doctest::Approx(3 * x * s).epsilon(1e-15));  // P_2^1
  const auto p2 = ferrers_plm(2, 2, x);
  CHECK(p2[0] == doctest::Approx(3 * (1 - x * x)).epsilon(1e-15));
}

TEST_CASE("prolate P at closed-form points") {
  const double x = 1.7;
  const auto p0 = prolate_plm(0, 2, x);
  CHECK(p0[0] == 1.0);
  CHECK(p0[1] == x);
  CHECK(p0[2] == doctest::Approx(0.5 * (3 * x * x - 1)).epsilon(1e-15));
  const double s = std::sqrt(x * x - 1);
  const auto p1 = prolate_plm(1, 1, x);
  CHECK(p1[0] == doctest::Approx(s).epsilon(1e-15));
}

TEST_CASE("prolate Q against closed forms") {
  for (double x : {1.01, 1.2, 3.0, 40.0}) {
    const double lg = 0.5 * std::log((x + 1) / (x - 1));
    const auto q0 = prolate_qlm(0, 2, x);
    CHECK(q0[0] == doctest::Approx(lg).epsilon(1e-13));
    CHECK(q0[1] == doctest::Approx(x * lg - 1.0).epsilon(1e-13));
    CHECK(q0[2] ==
          doctest::Approx(0.5 * (3 * x * x - 1) * lg - 1.5 * x)
              .epsilon(1e-12));

    // The implementation pairs the phase-free P chains with the Casoratian
    // normalization P_{l+1}^m Q_l^m - P_l^m Q_{l+1}^m = (l+m)!/(l-m+1)!,
    // which absorbs the textbook (-1)^m of Hobson's Q^m. The kernel test
    // below pins the pairing operationally.
    const double s = std::sqrt(x * x - 1);
    const auto q1 = prolate_qlm(1, 1, x);
    CHECK(q1[0] == doctest::Approx(x / s - s * lg).epsilon(1e-12));
  }
}

TEST_CASE("casoratian identity holds across l and m") {
  for (double x : {1.02, 1.4, 6.0}) {
    for (int m = 0; m <= 6; ++m) {
      const auto p = prolate_plm(m, m + 12, x);
      const auto q = prolate_qlm(m, m + 12, x);
      double expected = 1.0;
      for (int j = 2; j <= 2 * m; ++j) expected *= j;  // (2m)! at l = m
      for (int l = m; l < m + 12; ++l) {
        const std::size_t i = static_cast<std::size_t>(l - m);
        const double got = p[i + 1] * q[i] - p[i] * q[i + 1];
        CHECK(got == doctest::Approx(expected).epsilon(1e-11));
        expected *= static_cast<double>(l + m + 1) /
                    static_cast<double>(l - m + 2);
      }
    }
  }
}

TEST_CASE("neumann expansion reproduces the coulomb kernel") {
  SplitMix64 rng(307);
  const GeometryConfig geom{1.4};
  for (int trial = 0; trial < 25; ++trial) {
    // Separated radial coordinates for geometric convergence.
    const double xi1 = 1.0 + rng.uniform(0.02, 0.6);
    const double xi2 = xi1 + rng.uniform(0.7, 2.5);
    const double eta1 = rng.uniform(-0.95, 0.95);
    const double eta2 = rng.uniform(-0.95, 0.95);
    const double dphi = rng.uniform(0.0, 6.28);

    const Coordinates c1{xi1, eta1, dphi};
    const Coordinates c2{xi2, eta2, 0.0};
    const double exact = 1.0 / r12(c1, c2, geom);
    const double series = neumann_r12_inverse(
        geom.internuclear_distance, xi1, eta1, xi2, eta2, dphi, 60, 40);
    CHECK(series == doctest::Approx(exact).epsilon(1e-10));
  }
}
