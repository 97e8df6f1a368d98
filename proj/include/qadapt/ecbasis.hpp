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

#include <array>
#include <vector>

#include <Eigen/Dense>

#include "qadapt/encode.hpp"
#include "qadapt/quadrature.hpp"

namespace qadapt {

// Two-electron basis for H2 in prolate spheroidal coordinates (xi, eta, phi),
// nuclei on the z-axis at -R/2 (nucleus a) and +R/2 (nucleus b). All
// quantities in Hartree atomic units. Sigma states only (l = 0).
//
// A primitive term is
//   exp(-alpha xi1 - alphabar xi2) cosh(beta eta1 + betabar eta2)
//     xi1^r eta1^s xi2^rbar eta2^sbar (2 r12 / R)^mu,
// and the basis function is primitive(1,2) + sign * primitive(2,1), with
// sign +1 for singlet and -1 for triplet states.

struct GeometryConfig {
  double internuclear_distance;  // R, bohr; > 0
};

struct Coordinates {
  double xi;   // >= 1
  double eta;  // in [-1, 1]
  double phi;  // in [0, 2 pi)
};

struct CartesianPoint {
  double x, y, z;
  double r_a;  // distance to nucleus a (z = -R/2)
  double r_b;  // distance to nucleus b (z = +R/2)
};

CartesianPoint prolate_to_cartesian(const Coordinates& c,
                                    const GeometryConfig& geom);

/// Inter-electronic distance from the closed prolate-coordinate form;
/// validated against the Cartesian-difference oracle by the test suite.
/// Radicand values below -1e-14 raise a domain error; smaller negatives are
/// rounding residue and clamp to zero.
double r12(const Coordinates& c1, const Coordinates& c2,
           const GeometryConfig& geom);

// Desk-scale caps on the basis parameters.
inline constexpr int kMaxPolyExponent = 4;
inline constexpr int kMaxR12Power = 2;
inline constexpr int kMaxBasisTerms = 32;

struct BasisTerm {
  int r = 0;     // xi1 exponent
  int rbar = 0;  // xi2 exponent
  int s = 0;     // eta1 exponent
  int sbar = 0;  // eta2 exponent
  int mu = 0;    // (2 r12 / R) exponent

  friend bool operator==(const BasisTerm&, const BasisTerm&) = default;
};

struct BasisSet {
  double alpha = 1.0;
  double alphabar = 1.0;
  double beta = 0.0;
  double betabar = 0.0;
  int spin_sign = +1;  // +1 singlet, -1 triplet
  std::vector<BasisTerm> terms;

  /// Throws on out-of-range parameters (duplicate terms are legal input;
  /// orthonormalization drops them).
  void validate() const;
  bool has_duplicate_terms() const;
};

/// Symmetrized basis-function value at a pair of electron coordinates.
double basis_value(const BasisTerm& t, const BasisSet& bs,
                   const Coordinates& c1, const Coordinates& c2,
                   const GeometryConfig& geom);

struct ElectronGradients {
  std::array<double, 3> g1;  // d/d(x1,y1,z1)
  std::array<double, 3> g2;  // d/d(x2,y2,z2)
};

/// Analytic Cartesian gradient of the symmetrized basis value per electron.
/// Points must stay away from the coordinate singularities
/// (xi > 1 + 1e-10, |eta| < 1 - 1e-10); quadrature nodes always do.
ElectronGradients basis_gradient(const BasisTerm& t, const BasisSet& bs,
                                 const Coordinates& c1, const Coordinates& c2,
                                 const GeometryConfig& geom);

/// Node/weight tables for the 5-D reduced integrals: a semi-infinite rule in
/// xi (Gauss-Laguerre under xi = 1 + t / (2 min(alpha, alphabar))), an
/// N_eta-point rule on [-1, 1], and an N_phi-point rule for the relative
/// azimuth on (0, 2 pi).
///
/// The two electrons use distinct eta rules (Gauss-Legendre vs Fejer-1 at
/// Chebyshev nodes) so no node tuple ever lands on the r12 = 0 line, and the
/// phi rule clusters nodes toward 0 and 2 pi where the integrand develops a
/// boundary layer near electron coincidence. Both are required for the
/// grid-refinement drift to converge through the 1/r12 singularity.
struct QuadratureGrid {
  std::vector<double> xi_nodes, xi_weights;    // electron 1 and 2
  std::vector<double> eta_nodes, eta_weights;  // electron 1
  std::vector<double> eta2_nodes, eta2_weights;  // electron 2 (staggered)
  std::vector<double> phi_nodes, phi_weights;
  int level = 0;

  /// Level L uses (N_xi, N_eta, N_phi) = (24 + 8L, 24 + 8L, 32 + 16L).
  static QuadratureGrid create(int level, const BasisSet& bs);
};

struct EcMatrices {
  Eigen::MatrixXd overlap;      // S_ij
  Eigen::MatrixXd hamiltonian;  // h_ij, kinetic in gradient form
};

/// Overlap and Hamiltonian matrices over the symmetrized basis in one sweep.
/// Deterministic: per-element summation order is fixed regardless of
/// `threads` (slices reduce in ascending xi1 order).
EcMatrices ec_matrices(const BasisSet& bs, const QuadratureGrid& grid,
                       const GeometryConfig& geom, int threads = 1);

Eigen::MatrixXd overlap_matrix(const BasisSet& bs, const QuadratureGrid& grid,
                               const GeometryConfig& geom);

HamiltonianMatrix hamiltonian_matrix(const BasisSet& bs,
                                     const QuadratureGrid& grid,
                                     const GeometryConfig& geom,
                                     int threads = 1);

struct OrthonormalizedBasis {
  Eigen::MatrixXd hamiltonian;  // X^T h X on the kept subspace
  Eigen::MatrixXd transform;    // X, with X^T S X = I
  std::vector<int> kept;        // original indices of surviving vectors
  std::vector<int> dropped;     // near-dependent vectors removed
};

/// Modified Gram-Schmidt in the S-inner product with one reorthogonalization
/// pass. Vectors whose residual S-norm falls below 1e-8 of their initial
/// norm are dropped and reported.
OrthonormalizedBasis gram_schmidt_orthonormalize(const Eigen::MatrixXd& h,
                                                 const Eigen::MatrixXd& s);

}  // namespace qadapt
