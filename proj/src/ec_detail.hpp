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

// Shared node-evaluation internals of the explicitly correlated basis:
// used by the direct sweep (ecbasis.cpp) and by the separable engine for
// the odd r12-power pieces (ec_separable.cpp). Not installed.

#pragma once

#include <cmath>

#include "qadapt/ecbasis.hpp"

namespace qadapt::ecdetail {

struct Vec3 {
  double x = 0.0, y = 0.0, z = 0.0;
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a.x - b.x, a.y - b.y, a.z - b.z};
}
inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a.x + b.x, a.y + b.y, a.z + b.z};
}
inline Vec3 operator*(double c, const Vec3& a) {
  return {c * a.x, c * a.y, c * a.z};
}
inline double dot(const Vec3& a, const Vec3& b) {
  return a.x * b.x + a.y * b.y + a.z * b.z;
}

// Shared per-node factors for evaluating every term of a basis set at one
// pair of electron coordinates. "12" is the direct electron assignment,
// "21" the exchanged one.
struct PairFactors {
  double e12, e21;
  double ch12, sh12;
  double ch21, sh21;
  double xi1p[kMaxPolyExponent + 1];
  double eta1p[kMaxPolyExponent + 1];
  double xi2p[kMaxPolyExponent + 1];
  double eta2p[kMaxPolyExponent + 1];
  double r12p[kMaxR12Power + 1];
  double r12;
};

inline void fill_powers(double x, double* table) {
  table[0] = 1.0;
  for (int p = 1; p <= kMaxPolyExponent; ++p) table[p] = table[p - 1] * x;
}

inline PairFactors make_pair_factors(const BasisSet& bs, double xi1,
                                     double eta1, double xi2, double eta2,
                                     double r12_value, double R) {
  PairFactors f;
  f.e12 = std::exp(-bs.alpha * xi1 - bs.alphabar * xi2);
  f.e21 = std::exp(-bs.alpha * xi2 - bs.alphabar * xi1);
  const double u12 = bs.beta * eta1 + bs.betabar * eta2;
  const double u21 = bs.beta * eta2 + bs.betabar * eta1;
  f.ch12 = std::cosh(u12);
  f.sh12 = std::sinh(u12);
  f.ch21 = std::cosh(u21);
  f.sh21 = std::sinh(u21);
  fill_powers(xi1, f.xi1p);
  fill_powers(eta1, f.eta1p);
  fill_powers(xi2, f.xi2p);
  fill_powers(eta2, f.eta2p);
  f.r12 = r12_value;
  const double scaled = 2.0 * r12_value / R;
  f.r12p[0] = 1.0;
  for (int p = 1; p <= kMaxR12Power; ++p) f.r12p[p] = f.r12p[p - 1] * scaled;
  return f;
}

struct PieceEval {
  double v;
  double dxi1, deta1, dxi2, deta2;
};

// One primitive product e * ch * xi1^pa eta1^pb xi2^pc eta2^pd with partials
// in the four scalar coordinates; the r12 power is applied by the caller.
inline PieceEval eval_piece(double e, double ch, double sh, const double* xi1p,
                            const double* eta1p, const double* xi2p,
                            const double* eta2p, int pa, int pb, int pc,
                            int pd, double expo1, double expo2, double bc1,
                            double bc2) {
  const double A = xi1p[pa], B = eta1p[pb], C = xi2p[pc], D = eta2p[pd];
  PieceEval out;
  out.v = e * ch * A * B * C * D;
  out.dxi1 = e * ch * B * C * D *
             ((pa ? pa * xi1p[pa - 1] : 0.0) - expo1 * A);
  out.deta1 = e * A * C * D *
              ((pb ? pb * eta1p[pb - 1] : 0.0) * ch + bc1 * sh * B);
  out.dxi2 = e * ch * A * B * D *
             ((pc ? pc * xi2p[pc - 1] : 0.0) - expo2 * C);
  out.deta2 = e * A * B * C *
              ((pd ? pd * eta2p[pd - 1] : 0.0) * ch + bc2 * sh * D);
  return out;
}

struct TermEval {
  double value;
  double dxi1, deta1, dxi2, deta2, dr12;
};

inline TermEval eval_term(const BasisTerm& t, const BasisSet& bs,
                          const PairFactors& f, double R) {
  const double sign = static_cast<double>(bs.spin_sign);
  const PieceEval direct =
      eval_piece(f.e12, f.ch12, f.sh12, f.xi1p, f.eta1p, f.xi2p, f.eta2p, t.r,
                 t.s, t.rbar, t.sbar, bs.alpha, bs.alphabar, bs.beta,
                 bs.betabar);
  const PieceEval exchanged =
      eval_piece(f.e21, f.ch21, f.sh21, f.xi1p, f.eta1p, f.xi2p, f.eta2p,
                 t.rbar, t.sbar, t.r, t.s, bs.alphabar, bs.alpha, bs.betabar,
                 bs.beta);
  const double rp = f.r12p[t.mu];
  TermEval out;
  const double base = direct.v + sign * exchanged.v;
  out.value = base * rp;
  out.dxi1 = (direct.dxi1 + sign * exchanged.dxi1) * rp;
  out.deta1 = (direct.deta1 + sign * exchanged.deta1) * rp;
  out.dxi2 = (direct.dxi2 + sign * exchanged.dxi2) * rp;
  out.deta2 = (direct.deta2 + sign * exchanged.deta2) * rp;
  out.dr12 = t.mu ? base * t.mu * (2.0 / R) * f.r12p[t.mu - 1] : 0.0;
  return out;
}

// Cartesian position and the coordinate gradients of one electron:
// grad xi = (u_a + u_b)/R, grad eta = (u_a - u_b)/R with u the unit vectors
// from each nucleus toward the electron.
struct ElectronGeometry {
  Vec3 pos;
  Vec3 grad_xi;
  Vec3 grad_eta;
  double r_a, r_b;
};

inline ElectronGeometry electron_geometry(double xi, double eta, double phi,
                                          double R) {
  const double half = 0.5 * R;
  const double rho2 = (xi * xi - 1.0) * (1.0 - eta * eta);
  const double rho = half * std::sqrt(rho2 > 0.0 ? rho2 : 0.0);
  ElectronGeometry g;
  g.pos = {rho * std::cos(phi), rho * std::sin(phi), half * xi * eta};
  g.r_a = half * (xi + eta);
  g.r_b = half * (xi - eta);
  const Vec3 to_a{g.pos.x, g.pos.y, g.pos.z + half};
  const Vec3 to_b{g.pos.x, g.pos.y, g.pos.z - half};
  const Vec3 u_a = (1.0 / g.r_a) * to_a;
  const Vec3 u_b = (1.0 / g.r_b) * to_b;
  g.grad_xi = (1.0 / R) * (u_a + u_b);
  g.grad_eta = (1.0 / R) * (u_a - u_b);
  return g;
}

// Separable evaluation of every integrand piece whose total r12 power is
// odd (the pieces carrying a genuine 1/r12 kernel): exact phi moments,
// exact finite Legendre projections in eta, Neumann expansion in xi over an
// ordered-triangle quadrature. Returns the fully scaled contributions to S
// and h (same normalization as the direct sweep).
struct OddParityResult {
  Eigen::MatrixXd overlap;
  Eigen::MatrixXd hamiltonian;
};

OddParityResult odd_parity_contributions(const BasisSet& bs,
                                         const QuadratureGrid& grid,
                                         const GeometryConfig& geom,
                                         int threads);

}  // namespace qadapt::ecdetail
