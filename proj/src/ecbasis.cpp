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

#include "qadapt/ecbasis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "ec_detail.hpp"
#include "qadapt/quadrature.hpp"

namespace qadapt {

using ecdetail::ElectronGeometry;
using ecdetail::PairFactors;
using ecdetail::TermEval;
using ecdetail::Vec3;

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kGsDropTol = 1e-8;  // relative residual S-norm

void check_geometry(const GeometryConfig& geom) {
  if (!(geom.internuclear_distance > 0.0)) {
    throw std::invalid_argument("GeometryConfig: R must be positive");
  }
}

void check_coordinates(const Coordinates& c) {
  if (!(c.xi >= 1.0) || !(c.eta >= -1.0 && c.eta <= 1.0)) {
    throw std::invalid_argument("Coordinates: xi >= 1 and |eta| <= 1 required");
  }
}

}  // namespace

CartesianPoint prolate_to_cartesian(const Coordinates& c,
                                    const GeometryConfig& geom) {
  check_geometry(geom);
  check_coordinates(c);
  const double R = geom.internuclear_distance;
  const double half = 0.5 * R;
  const double rho2 = (c.xi * c.xi - 1.0) * (1.0 - c.eta * c.eta);
  const double rho = half * std::sqrt(std::max(rho2, 0.0));
  CartesianPoint p;
  p.x = rho * std::cos(c.phi);
  p.y = rho * std::sin(c.phi);
  p.z = half * c.xi * c.eta;
  p.r_a = half * (c.xi + c.eta);
  p.r_b = half * (c.xi - c.eta);
  return p;
}

double r12(const Coordinates& c1, const Coordinates& c2,
           const GeometryConfig& geom) {
  check_geometry(geom);
  check_coordinates(c1);
  check_coordinates(c2);
  const double R = geom.internuclear_distance;
  const double cross = (c1.xi * c1.xi - 1.0) * (c2.xi * c2.xi - 1.0) *
                       (1.0 - c1.eta * c1.eta) * (1.0 - c2.eta * c2.eta);
  double radicand = c1.xi * c1.xi + c2.xi * c2.xi + c1.eta * c1.eta +
                    c2.eta * c2.eta - 2.0 -
                    2.0 * c1.xi * c2.xi * c1.eta * c2.eta -
                    2.0 * std::sqrt(std::max(cross, 0.0)) *
                        std::cos(c1.phi - c2.phi);
  if (radicand < -1e-14) {
    throw std::domain_error("r12: negative radicand beyond tolerance");
  }
  radicand = std::max(radicand, 0.0);
  return 0.5 * R * std::sqrt(radicand);
}

void BasisSet::validate() const {
  if (!(alpha > 0.0) || !(alphabar > 0.0)) {
    throw std::invalid_argument("BasisSet: alpha and alphabar must be > 0");
  }
  if (std::abs(beta) > 2.0 || std::abs(betabar) > 2.0) {
    // Desk-scale cap: the eta treatment expands cosh to polynomial degree
    // ~20, which holds 1e-15 accuracy only for moderate arguments.
    throw std::invalid_argument("BasisSet: |beta|, |betabar| <= 2 supported");
  }
  if (spin_sign != 1 && spin_sign != -1) {
    throw std::invalid_argument("BasisSet: sign must be +1 or -1");
  }
  if (terms.empty() || terms.size() > kMaxBasisTerms) {
    throw std::invalid_argument("BasisSet: term count out of range");
  }
  for (const auto& t : terms) {
    const bool poly_ok = t.r >= 0 && t.r <= kMaxPolyExponent && t.rbar >= 0 &&
                         t.rbar <= kMaxPolyExponent && t.s >= 0 &&
                         t.s <= kMaxPolyExponent && t.sbar >= 0 &&
                         t.sbar <= kMaxPolyExponent;
    if (!poly_ok || t.mu < 0 || t.mu > kMaxR12Power) {
      throw std::invalid_argument("BasisSet: term exponent out of range");
    }
  }
}

bool BasisSet::has_duplicate_terms() const {
  for (std::size_t i = 0; i < terms.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (terms[i] == terms[j]) return true;
    }
  }
  return false;
}

double basis_value(const BasisTerm& t, const BasisSet& bs,
                   const Coordinates& c1, const Coordinates& c2,
                   const GeometryConfig& geom) {
  check_geometry(geom);
  const double d = r12(c1, c2, geom);
  const PairFactors f = ecdetail::make_pair_factors(
      bs, c1.xi, c1.eta, c2.xi, c2.eta, d, geom.internuclear_distance);
  return ecdetail::eval_term(t, bs, f, geom.internuclear_distance).value;
}

ElectronGradients basis_gradient(const BasisTerm& t, const BasisSet& bs,
                                 const Coordinates& c1, const Coordinates& c2,
                                 const GeometryConfig& geom) {
  check_geometry(geom);
  for (const auto* c : {&c1, &c2}) {
    if (c->xi <= 1.0 + 1e-10 || std::abs(c->eta) >= 1.0 - 1e-10) {
      throw std::domain_error(
          "basis_gradient: point too close to a coordinate singularity");
    }
  }
  const double R = geom.internuclear_distance;
  const double d = r12(c1, c2, geom);
  const PairFactors f =
      ecdetail::make_pair_factors(bs, c1.xi, c1.eta, c2.xi, c2.eta, d, R);
  const TermEval e = ecdetail::eval_term(t, bs, f, R);

  const ElectronGeometry g1 =
      ecdetail::electron_geometry(c1.xi, c1.eta, c1.phi, R);
  const ElectronGeometry g2 =
      ecdetail::electron_geometry(c2.xi, c2.eta, c2.phi, R);
  const Vec3 diff = g1.pos - g2.pos;
  const Vec3 u12 = d > 0.0 ? (1.0 / d) * diff : Vec3{};

  const Vec3 grad1 =
      e.dxi1 * g1.grad_xi + e.deta1 * g1.grad_eta + e.dr12 * u12;
  const Vec3 grad2 =
      e.dxi2 * g2.grad_xi + e.deta2 * g2.grad_eta + (-e.dr12) * u12;
  return {{grad1.x, grad1.y, grad1.z}, {grad2.x, grad2.y, grad2.z}};
}

namespace {

// Fejer-1: interpolatory rule at Chebyshev points. Positive weights,
// spectrally accurate for smooth integrands, and its nodes never collide
// with Gauss-Legendre nodes, which staggers the two electron grids.
QuadratureRule fejer1(int n) {
  const double pi = 0.5 * kTwoPi;
  QuadratureRule rule;
  for (int k = n - 1; k >= 0; --k) {  // ascending nodes
    const double theta = (2.0 * k + 1.0) * pi / (2.0 * n);
    double sum = 0.0;
    for (int m = 1; m <= n / 2; ++m) {
      sum += std::cos(2.0 * m * theta) / (4.0 * m * m - 1.0);
    }
    rule.nodes.push_back(std::cos(theta));
    rule.weights.push_back((2.0 / n) * (1.0 - 2.0 * sum));
  }
  return rule;
}

}  // namespace

QuadratureGrid QuadratureGrid::create(int level, const BasisSet& bs) {
  if (level < 0 || level > 6) {
    throw std::invalid_argument("QuadratureGrid: level must be in [0, 6]");
  }
  bs.validate();
  const int n_xi = 24 + 8 * level;
  const int n_eta = 24 + 8 * level;
  const int n_phi = 32 + 16 * level;

  QuadratureGrid grid;
  grid.level = level;

  // xi = 1 + t / (2 min(alpha, alphabar)) matches the exponential decay of
  // the integrand, so Gauss-Laguerre in t applies directly.
  const double c = 1.0 / (2.0 * std::min(bs.alpha, bs.alphabar));
  const QuadratureRule lag = gauss_laguerre(n_xi);
  for (int k = 0; k < n_xi; ++k) {
    const double t = lag.nodes[static_cast<std::size_t>(k)];
    grid.xi_nodes.push_back(1.0 + c * t);
    grid.xi_weights.push_back(lag.weights[static_cast<std::size_t>(k)] *
                              std::exp(t) * c);
  }

  const QuadratureRule leg = gauss_legendre(n_eta);
  grid.eta_nodes = leg.nodes;
  grid.eta_weights = leg.weights;
  const QuadratureRule fej = fejer1(n_eta);
  grid.eta2_nodes = fej.nodes;
  grid.eta2_weights = fej.weights;

  // Relative azimuth on (0, 2 pi) through the cubic clustering map
  // phi(u) = pi (1 + (3u - u^3)/2): node density grows toward 0 and 2 pi,
  // where the smooth integrands steepen as the electrons approach.
  const QuadratureRule phi = gauss_legendre(n_phi);
  const double pi = 0.5 * kTwoPi;
  for (int k = 0; k < n_phi; ++k) {
    const double u = phi.nodes[static_cast<std::size_t>(k)];
    grid.phi_nodes.push_back(pi * (1.0 + 0.5 * u * (3.0 - u * u)));
    grid.phi_weights.push_back(pi * 1.5 * (1.0 - u * u) *
                               phi.weights[static_cast<std::size_t>(k)]);
  }
  return grid;
}

namespace {

// Direct sweep over the tensor grid. Handles exactly the integrand pieces
// whose total r12 power is even: those are polynomial in cos(phi12) and
// converge spectrally here. Pieces with odd total power (the 1/r12 kernel
// class) belong to the separable engine. For a term pair (i, j):
//   mu_i + mu_j even -> overlap, kinetic, nuclear pieces here;
//   mu_i + mu_j odd  -> only the electron-repulsion piece here.
void accumulate_slice(const BasisSet& bs, const QuadratureGrid& grid,
                      double R, std::size_t i1, Eigen::MatrixXd& s_acc,
                      Eigen::MatrixXd& h_acc) {
  const int nt = static_cast<int>(bs.terms.size());
  const double xi1 = grid.xi_nodes[i1];
  const double wxi1 = grid.xi_weights[i1];

  std::vector<double> value(static_cast<std::size_t>(nt));
  std::vector<Vec3> grad1(static_cast<std::size_t>(nt));
  std::vector<Vec3> grad2(static_cast<std::size_t>(nt));
  std::vector<double> wvalue(static_cast<std::size_t>(nt));

  for (std::size_t ie1 = 0; ie1 < grid.eta_nodes.size(); ++ie1) {
    const double eta1 = grid.eta_nodes[ie1];
    const double weta1 = grid.eta_weights[ie1];
    const double vol1 = xi1 * xi1 - eta1 * eta1;
    const double r_a1 = 0.5 * R * (xi1 + eta1);
    const double r_b1 = 0.5 * R * (xi1 - eta1);

    for (std::size_t i2 = 0; i2 < grid.xi_nodes.size(); ++i2) {
      const double xi2 = grid.xi_nodes[i2];
      const double wxi2 = grid.xi_weights[i2];

      for (std::size_t ie2 = 0; ie2 < grid.eta2_nodes.size(); ++ie2) {
        const double eta2 = grid.eta2_nodes[ie2];
        const double weta2 = grid.eta2_weights[ie2];
        const double vol2 = xi2 * xi2 - eta2 * eta2;

        // Electron 2 sits in the phi = 0 plane; only phi1 - phi2 matters.
        const ElectronGeometry g2 =
            ecdetail::electron_geometry(xi2, eta2, 0.0, R);
        const double v_nuclear = -1.0 / r_a1 - 1.0 / r_b1 - 1.0 / g2.r_a -
                                 1.0 / g2.r_b + 1.0 / R;

        PairFactors f =
            ecdetail::make_pair_factors(bs, xi1, eta1, xi2, eta2, 0.0, R);

        const double w4 = wxi1 * weta1 * wxi2 * weta2 * vol1 * vol2;
        const double cross = (xi1 * xi1 - 1.0) * (xi2 * xi2 - 1.0) *
                             (1.0 - eta1 * eta1) * (1.0 - eta2 * eta2);
        const double base_rad = xi1 * xi1 + xi2 * xi2 + eta1 * eta1 +
                                eta2 * eta2 - 2.0 -
                                2.0 * xi1 * xi2 * eta1 * eta2;
        const double sq_cross = std::sqrt(std::max(cross, 0.0));

        for (std::size_t ip = 0; ip < grid.phi_nodes.size(); ++ip) {
          const double phi = grid.phi_nodes[ip];
          const double wphi = grid.phi_weights[ip];
          const double radicand =
              std::max(base_rad - 2.0 * sq_cross * std::cos(phi), 0.0);
          const double d12 = 0.5 * R * std::sqrt(radicand);

          f.r12 = d12;
          const double scaled = 2.0 * d12 / R;
          for (int p = 1; p <= kMaxR12Power; ++p) {
            f.r12p[p] = f.r12p[p - 1] * scaled;
          }

          const ElectronGeometry g1 =
              ecdetail::electron_geometry(xi1, eta1, phi, R);
          const Vec3 diff = g1.pos - g2.pos;
          const Vec3 u12 = (1.0 / d12) * diff;

          for (int t = 0; t < nt; ++t) {
            const TermEval e = ecdetail::eval_term(
                bs.terms[static_cast<std::size_t>(t)], bs, f, R);
            value[static_cast<std::size_t>(t)] = e.value;
            grad1[static_cast<std::size_t>(t)] =
                e.dxi1 * g1.grad_xi + e.deta1 * g1.grad_eta + e.dr12 * u12;
            grad2[static_cast<std::size_t>(t)] =
                e.dxi2 * g2.grad_xi + e.deta2 * g2.grad_eta +
                (-e.dr12) * u12;
          }

          const double w = w4 * wphi;
          for (int t = 0; t < nt; ++t) {
            wvalue[static_cast<std::size_t>(t)] =
                w * value[static_cast<std::size_t>(t)];
          }
          for (int i = 0; i < nt; ++i) {
            const std::size_t iu = static_cast<std::size_t>(i);
            const int mu_i = bs.terms[iu].mu;
            for (int j = i; j < nt; ++j) {
              const std::size_t ju = static_cast<std::size_t>(j);
              const bool even = ((mu_i + bs.terms[ju].mu) & 1) == 0;
              const double p = value[iu] * value[ju];
              if (even) {
                s_acc(i, j) += wvalue[iu] * value[ju];
                const double kinetic =
                    0.5 * (dot(grad1[iu], grad1[ju]) +
                           dot(grad2[iu], grad2[ju]));
                h_acc(i, j) += w * (kinetic + v_nuclear * p);
              } else {
                h_acc(i, j) += w * p / d12;  // even-power repulsion piece
              }
            }
          }
        }
      }
    }
  }
}

}  // namespace

EcMatrices ec_matrices(const BasisSet& bs, const QuadratureGrid& grid,
                       const GeometryConfig& geom, int threads) {
  check_geometry(geom);
  bs.validate();
  if (grid.xi_nodes.size() < 8 || grid.eta_nodes.size() < 8 ||
      grid.eta2_nodes.size() < 8 || grid.phi_nodes.size() < 8) {
    throw std::invalid_argument("ec_matrices: grid too coarse");
  }
  const double R = geom.internuclear_distance;
  const int nt = static_cast<int>(bs.terms.size());
  const std::size_t n_slices = grid.xi_nodes.size();

  std::vector<Eigen::MatrixXd> s_slices(n_slices);
  std::vector<Eigen::MatrixXd> h_slices(n_slices);

  const int workers = std::clamp(threads, 1, static_cast<int>(n_slices));
  std::atomic<std::size_t> next{0};
  auto work = [&]() {
    for (;;) {
      const std::size_t i1 = next.fetch_add(1);
      if (i1 >= n_slices) break;
      Eigen::MatrixXd s_acc = Eigen::MatrixXd::Zero(nt, nt);
      Eigen::MatrixXd h_acc = Eigen::MatrixXd::Zero(nt, nt);
      accumulate_slice(bs, grid, R, i1, s_acc, h_acc);
      s_slices[i1] = std::move(s_acc);
      h_slices[i1] = std::move(h_acc);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }

  Eigen::MatrixXd s_total = Eigen::MatrixXd::Zero(nt, nt);
  Eigen::MatrixXd h_total = Eigen::MatrixXd::Zero(nt, nt);
  for (std::size_t i1 = 0; i1 < n_slices; ++i1) {
    s_total += s_slices[i1];
    h_total += h_slices[i1];
  }

  // The phi quadrature already integrates the relative azimuth over
  // [0, 2 pi]; one factor of 2 pi remains from the absolute azimuth.
  const double half_r = 0.5 * R;
  const double prefactor = kTwoPi * std::pow(half_r, 6);
  s_total *= prefactor;
  h_total *= prefactor;

  // Pieces with odd total r12 power carry the Coulomb kernel; they are
  // evaluated separably (exact angular reductions) rather than swept.
  const ecdetail::OddParityResult odd =
      ecdetail::odd_parity_contributions(bs, grid, geom, threads);
  s_total += odd.overlap;
  h_total += odd.hamiltonian;

  if (!s_total.allFinite() || !h_total.allFinite()) {
    throw std::runtime_error("ec_matrices: non-finite integrand encountered");
  }

  // Mirror the strict upper triangle; symmetry is then exact by construction.
  for (int i = 0; i < nt; ++i) {
    for (int j = 0; j < i; ++j) {
      s_total(i, j) = s_total(j, i);
      h_total(i, j) = h_total(j, i);
    }
  }
  return {std::move(s_total), std::move(h_total)};
}

Eigen::MatrixXd overlap_matrix(const BasisSet& bs, const QuadratureGrid& grid,
                               const GeometryConfig& geom) {
  return ec_matrices(bs, grid, geom).overlap;
}

HamiltonianMatrix hamiltonian_matrix(const BasisSet& bs,
                                     const QuadratureGrid& grid,
                                     const GeometryConfig& geom,
                                     int threads) {
  EcMatrices m = ec_matrices(bs, grid, geom, threads);
  HamiltonianMatrix::Metadata meta;
  meta.internuclear_distance = geom.internuclear_distance;
  meta.symmetry = bs.spin_sign > 0 ? "singlet" : "triplet";
  meta.basis = "kw-sigma";
  return HamiltonianMatrix(std::move(m.hamiltonian), std::move(meta));
}

OrthonormalizedBasis gram_schmidt_orthonormalize(const Eigen::MatrixXd& h,
                                                 const Eigen::MatrixXd& s) {
  const Eigen::Index n = s.rows();
  if (s.cols() != n || h.rows() != n || h.cols() != n) {
    throw std::invalid_argument(
        "gram_schmidt_orthonormalize: dimension mismatch");
  }
  const double s_scale = s.cwiseAbs().maxCoeff();
  for (Eigen::Index i = 0; i < n; ++i) {
    if (!(s(i, i) > 0.0)) {
      throw std::invalid_argument(
          "gram_schmidt_orthonormalize: overlap is not positive semidefinite");
    }
  }

  OrthonormalizedBasis out;
  Eigen::MatrixXd x(n, 0);
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::VectorXd v = Eigen::VectorXd::Unit(n, i);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index k = 0; k < x.cols(); ++k) {
        const double c = x.col(k).dot(s * v);
        v -= c * x.col(k);
      }
    }
    const double norm2 = v.dot(s * v);
    if (norm2 < -1e-10 * s_scale) {
      throw std::invalid_argument(
          "gram_schmidt_orthonormalize: overlap is not positive semidefinite");
    }
    const double initial2 = s(i, i);
    if (norm2 <= kGsDropTol * kGsDropTol * initial2) {
      out.dropped.push_back(static_cast<int>(i));
      continue;
    }
    v /= std::sqrt(norm2);
    x.conservativeResize(Eigen::NoChange, x.cols() + 1);
    x.col(x.cols() - 1) = v;
    out.kept.push_back(static_cast<int>(i));
  }
  out.transform = x;
  out.hamiltonian = x.transpose() * h * x;
  // The triple product is symmetric only up to rounding; make it exact.
  out.hamiltonian =
      0.5 * (out.hamiltonian + out.hamiltonian.transpose()).eval();
  return out;
}

}  // namespace qadapt
