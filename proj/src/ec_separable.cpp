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

// Separable evaluation of the integrand pieces with odd total r12 power.
//
// Multiplying such a piece by r12 yields a function that is exactly
// polynomial in c = cos(phi12), with (eta1, eta2) coefficients that are
// polynomial after dividing out (s1 s2)^(k mod 2), s_i = sqrt(1 - eta_i^2).
// The piece itself is that polynomial times the Coulomb kernel 1/r12, so
// per ordered xi pair (xi1 < xi2):
//   1. sample piece * r12 at Legendre nodes in c and project onto P_k(c)
//      (exact: the function is a polynomial of bounded degree);
//   2. per (k, eta-pair) divide out the parity factor; the remaining eta
//      dependence pairs against the exact kernel moments
//        M_kpq = integral P_p(eta1) P_q(eta2) (s1 s2)^sigma P_k(c) / r12,
//      which the Neumann expansion reduces to a FINITE (l, m) sum: the eta
//      integrals A_{p,l,m} vanish for l > p + sigma (Rodrigues formula and
//      repeated integration by parts), and the phi pairing vanishes for
//      m > k. The moments are transformed back to eta-node space once per
//      xi pair, so each channel reduces to a dot product.
// The xi integration runs over the ordered triangle (outer Laguerre rule,
// inner mapped rule on (1, xi2)), so r12 = 0 is never approached and every
// sampled function is smooth. No series truncation error remains; the only
// approximations are the xi quadratures.

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Dense>

#include "ec_detail.hpp"
#include "qadapt/legendre.hpp"
#include "qadapt/quadrature.hpp"

namespace qadapt::ecdetail {

namespace {

constexpr double kPi = 3.14159265358979323846;

constexpr int kMaxC = 8;         // Legendre-in-c cutoff (degree bound ~5)
constexpr int kMaxP = 21;        // eta Legendre cutoff (degree bound ~18)
constexpr int kEtaNodes = 22;    // exact for polynomials through degree 43
constexpr int kMaxL = kMaxP + 1; // A_{p,l,m} = 0 for l > p + (m & 1)

// Plain Legendre values P_0..P_n at x.
void legendre_values(int n, double x, double* out) {
  out[0] = 1.0;
  if (n == 0) return;
  out[1] = x;
  for (int k = 2; k <= n; ++k) {
    out[k] = ((2.0 * k - 1.0) * x * out[k - 1] - (k - 1.0) * out[k - 2]) / k;
  }
}

struct Tables {
  std::vector<double> c_nodes, phi_nodes;
  Eigen::MatrixXd c_proj;  // (kMaxC+1) x n_c : (2k+1)/2 w_s P_k(c_s)
  std::vector<double> eta_nodes, eta_weights, eta_sine;
  Eigen::MatrixXd eta_proj;  // (kMaxP+1) x kEtaNodes
  std::vector<Eigen::MatrixXd> a_table;  // per m: (p, l-m)
  Eigen::MatrixXd phi_table;             // (k, m)
  std::vector<std::vector<double>> neumann;
};

Tables build_tables() {
  Tables t;

  const int n_c = 12;
  const QuadratureRule cs = gauss_legendre(n_c);
  t.c_nodes = cs.nodes;
  t.c_proj.resize(kMaxC + 1, n_c);
  std::vector<double> leg(kMaxC + 1);
  for (int s = 0; s < n_c; ++s) {
    t.phi_nodes.push_back(std::acos(cs.nodes[static_cast<std::size_t>(s)]));
    legendre_values(kMaxC, cs.nodes[static_cast<std::size_t>(s)], leg.data());
    for (int k = 0; k <= kMaxC; ++k) {
      t.c_proj(k, s) = 0.5 * (2.0 * k + 1.0) *
                       cs.weights[static_cast<std::size_t>(s)] * leg[k];
    }
  }

  const QuadratureRule es = gauss_legendre(kEtaNodes);
  t.eta_nodes = es.nodes;
  t.eta_weights = es.weights;
  t.eta_proj.resize(kMaxP + 1, kEtaNodes);
  std::vector<double> legp(kMaxP + 1);
  for (int n = 0; n < kEtaNodes; ++n) {
    const double eta = es.nodes[static_cast<std::size_t>(n)];
    t.eta_sine.push_back(std::sqrt(1.0 - eta * eta));
    legendre_values(kMaxP, eta, legp.data());
    for (int p = 0; p <= kMaxP; ++p) {
      t.eta_proj(p, n) = 0.5 * (2.0 * p + 1.0) *
                         es.weights[static_cast<std::size_t>(n)] * legp[p];
    }
  }

  // A tables by 64-point Gauss: the integrands are polynomials (sigma and m
  // share parity), so the rule is exact.
  const QuadratureRule fine = gauss_legendre(64);
  t.a_table.resize(kMaxC + 1);
  for (int m = 0; m <= kMaxC; ++m) {
    const int sigma = m & 1;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(kMaxP + 1, kMaxL - m + 1);
    for (std::size_t g = 0; g < fine.nodes.size(); ++g) {
      const double eta = fine.nodes[g];
      const double w = fine.weights[g];
      const double parity = sigma ? std::sqrt(1.0 - eta * eta) : 1.0;
      const std::vector<double> plm = ferrers_plm(m, kMaxL, eta);
      legendre_values(kMaxP, eta, legp.data());
      for (int p = 0; p <= kMaxP; ++p) {
        const double base = w * parity * legp[p];
        for (int l = m; l <= kMaxL; ++l) {
          a(p, l - m) += base * plm[static_cast<std::size_t>(l - m)];
        }
      }
    }
    t.a_table[static_cast<std::size_t>(m)] = std::move(a);
  }

  // Phi pairings by Chebyshev-Gauss (exact for trigonometric polynomials):
  // integral over [0, 2 pi] of P_k(cos phi) cos(m phi)
  //   = 2 integral over (-1, 1) of P_k(c) T_m(c) / sqrt(1 - c^2).
  const int n_cheb = 64;
  t.phi_table = Eigen::MatrixXd::Zero(kMaxC + 1, kMaxC + 1);
  for (int j = 0; j < n_cheb; ++j) {
    const double theta = kPi * (j + 0.5) / n_cheb;
    legendre_values(kMaxC, std::cos(theta), leg.data());
    for (int k = 0; k <= kMaxC; ++k) {
      for (int m = 0; m <= kMaxC; ++m) {
        t.phi_table(k, m) +=
            2.0 * (kPi / n_cheb) * leg[k] * std::cos(m * theta);
      }
    }
  }

  t.neumann.resize(kMaxC + 1);
  for (int m = 0; m <= kMaxC; ++m) {
    for (int l = m; l <= kMaxL; ++l) {
      double ratio = 1.0;
      for (int j = l - m + 1; j <= l + m; ++j) ratio /= j;
      const double eps = m == 0 ? 1.0 : 2.0;
      t.neumann[static_cast<std::size_t>(m)].push_back(
          eps * (2.0 * l + 1.0) * ratio * ratio);
    }
  }
  return t;
}

struct Channel {
  int i, j;
  bool odd;  // mu_i + mu_j odd: overlap/kinetic/nuclear route here;
             // even: only the repulsion piece does
};

// Outer xi2 rule. The outer integrand behaves like t log t near xi2 -> 1
// (the m = 0 kernel moments carry Q_0's logarithm), which a plain Laguerre
// rule resolves too slowly. Split at t_c = 2: a Gauss-Legendre region under
// t = t_c v^2 (the map lifts t log t to v^3 log v) plus a shifted Laguerre
// tail, both scaled by the level's node count.
struct OuterRule {
  std::vector<double> nodes;    // xi2
  std::vector<double> weights;  // includes d(xi2)
};

OuterRule build_outer(int n, double c) {
  constexpr double t_c = 2.0;
  OuterRule rule;
  const QuadratureRule gl = gauss_legendre(n);
  for (int i = 0; i < n; ++i) {
    const double v = 0.5 * (gl.nodes[static_cast<std::size_t>(i)] + 1.0);
    const double w = 0.5 * gl.weights[static_cast<std::size_t>(i)];
    rule.nodes.push_back(1.0 + c * t_c * v * v);
    rule.weights.push_back(w * c * 2.0 * t_c * v);
  }
  const QuadratureRule lag = gauss_laguerre(n);
  for (int i = 0; i < n; ++i) {
    const double tau = lag.nodes[static_cast<std::size_t>(i)];
    rule.nodes.push_back(1.0 + c * (t_c + tau));
    rule.weights.push_back(c * lag.weights[static_cast<std::size_t>(i)] *
                           std::exp(tau));
  }
  return rule;
}

}  // namespace

OddParityResult odd_parity_contributions(const BasisSet& bs,
                                         const QuadratureGrid& grid,
                                         const GeometryConfig& geom,
                                         int threads) {
  static const Tables tables = build_tables();

  const double R = geom.internuclear_distance;
  const int nt = static_cast<int>(bs.terms.size());
  const int n_level = static_cast<int>(grid.xi_nodes.size());
  const double c_decay = 1.0 / (2.0 * std::min(bs.alpha, bs.alphabar));
  const OuterRule outer = build_outer(n_level, c_decay);
  const std::size_t n_outer = outer.nodes.size();
  const int n_inner = n_level;
  const int n_c = static_cast<int>(tables.c_nodes.size());
  const int n_k = kMaxC + 1;

  std::vector<Channel> channels;
  for (int i = 0; i < nt; ++i) {
    for (int j = i; j < nt; ++j) {
      const bool odd = ((bs.terms[static_cast<std::size_t>(i)].mu +
                         bs.terms[static_cast<std::size_t>(j)].mu) &
                        1) != 0;
      channels.push_back({i, j, odd});
    }
  }
  const std::size_t n_ch = channels.size();
  std::vector<int> col_s(n_ch, -1), col_h(n_ch, -1);
  int n_cols = 0;
  for (std::size_t c = 0; c < n_ch; ++c) {
    if (channels[c].odd) col_s[c] = n_cols++;
    col_h[c] = n_cols++;
  }

  const QuadratureRule inner_rule = gauss_legendre(n_inner);

  std::vector<Eigen::MatrixXd> s_parts(n_outer);
  std::vector<Eigen::MatrixXd> h_parts(n_outer);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> degree_alarm{false};

  auto work = [&]() {
    Eigen::MatrixXd q_samples(n_c, n_cols);
    Eigen::MatrixXd b_coeff(n_k, n_cols);
    // Accumulated dot products: per column, sum over eta pairs and k of
    // b * W; W is the moment matrix mapped to eta-node space.
    Eigen::MatrixXd b_grid(kEtaNodes * kEtaNodes, n_cols * n_k);
    std::vector<double> value(static_cast<std::size_t>(nt));
    std::vector<Vec3> grad1(static_cast<std::size_t>(nt));
    std::vector<Vec3> grad2(static_cast<std::size_t>(nt));

    for (;;) {
      const std::size_t n2 = next.fetch_add(1);
      if (n2 >= n_outer) break;
      const double xi2 = outer.nodes[n2];
      const double wxi2 = outer.weights[n2];

      Eigen::MatrixXd s_acc = Eigen::MatrixXd::Zero(nt, nt);
      Eigen::MatrixXd h_acc = Eigen::MatrixXd::Zero(nt, nt);

      std::vector<std::vector<double>> q_gt;
      for (int m = 0; m <= kMaxC; ++m) {
        q_gt.push_back(prolate_qlm(m, kMaxL, xi2));
      }

      for (int ni = 0; ni < n_inner; ++ni) {
        // xi1 = 1 + (xi2 - 1) u^2: covers (1, xi2), clusters toward the
        // endpoint and turns (xi1^2-1)^(m/2) into a polynomial in u.
        const double u =
            0.5 * (inner_rule.nodes[static_cast<std::size_t>(ni)] + 1.0);
        const double wu =
            0.5 * inner_rule.weights[static_cast<std::size_t>(ni)];
        const double xi1 = 1.0 + (xi2 - 1.0) * u * u;
        const double w_in = wu * 2.0 * (xi2 - 1.0) * u;

        std::vector<std::vector<double>> p_lt;
        for (int m = 0; m <= kMaxC; ++m) {
          p_lt.push_back(prolate_plm(m, kMaxL, xi1));
        }

        // Kernel moments M_k in Legendre space, then mapped to eta-node
        // space: W_k(na, nb) = sum_pq P(p,na) M_k(p,q) P(q,nb).
        std::vector<Eigen::MatrixXd> t_m(static_cast<std::size_t>(n_k));
        for (int m = 0; m <= kMaxC; ++m) {
          Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(kMaxP + 1, kMaxP + 1);
          const auto& a = tables.a_table[static_cast<std::size_t>(m)];
          for (int l = m; l <= kMaxL; ++l) {
            const double core =
                tables.neumann[static_cast<std::size_t>(m)]
                              [static_cast<std::size_t>(l - m)] *
                p_lt[static_cast<std::size_t>(m)]
                    [static_cast<std::size_t>(l - m)] *
                q_gt[static_cast<std::size_t>(m)]
                    [static_cast<std::size_t>(l - m)];
            acc.noalias() += core * a.col(l - m) * a.col(l - m).transpose();
          }
          t_m[static_cast<std::size_t>(m)] = std::move(acc);
        }
        std::vector<Eigen::VectorXd> w_k(static_cast<std::size_t>(n_k));
        for (int k = 0; k <= kMaxC; ++k) {
          Eigen::MatrixXd mk = Eigen::MatrixXd::Zero(kMaxP + 1, kMaxP + 1);
          for (int m = k & 1; m <= k; m += 2) {
            mk.noalias() += (2.0 / R) * tables.phi_table(k, m) *
                            t_m[static_cast<std::size_t>(m)];
          }
          const Eigen::MatrixXd w_nodes =
              tables.eta_proj.transpose() * mk * tables.eta_proj;
          // Flatten with rows matching b_grid's (na * kEtaNodes + nb).
          Eigen::VectorXd flat(kEtaNodes * kEtaNodes);
          for (int na = 0; na < kEtaNodes; ++na) {
            for (int nb = 0; nb < kEtaNodes; ++nb) {
              flat(na * kEtaNodes + nb) = w_nodes(na, nb);
            }
          }
          w_k[static_cast<std::size_t>(k)] = std::move(flat);
        }

        for (int na = 0; na < kEtaNodes; ++na) {
          const double eta1 = tables.eta_nodes[static_cast<std::size_t>(na)];
          const double vol1 = xi1 * xi1 - eta1 * eta1;
          const double r_a1 = 0.5 * R * (xi1 + eta1);
          const double r_b1 = 0.5 * R * (xi1 - eta1);
          for (int nb = 0; nb < kEtaNodes; ++nb) {
            const double eta2 =
                tables.eta_nodes[static_cast<std::size_t>(nb)];
            const ElectronGeometry geom2 =
                electron_geometry(xi2, eta2, 0.0, R);
            const double vol2 = xi2 * xi2 - eta2 * eta2;
            const double volume = vol1 * vol2;
            const double v_nuclear = -1.0 / r_a1 - 1.0 / r_b1 -
                                     1.0 / geom2.r_a - 1.0 / geom2.r_b +
                                     1.0 / R;

            PairFactors f =
                make_pair_factors(bs, xi1, eta1, xi2, eta2, 0.0, R);
            const double cross = (xi1 * xi1 - 1.0) * (xi2 * xi2 - 1.0) *
                                 (1.0 - eta1 * eta1) * (1.0 - eta2 * eta2);
            const double base_rad = xi1 * xi1 + xi2 * xi2 + eta1 * eta1 +
                                    eta2 * eta2 - 2.0 -
                                    2.0 * xi1 * xi2 * eta1 * eta2;
            const double sq_cross = std::sqrt(std::max(cross, 0.0));

            for (int s = 0; s < n_c; ++s) {
              const double c = tables.c_nodes[static_cast<std::size_t>(s)];
              const double phi =
                  tables.phi_nodes[static_cast<std::size_t>(s)];
              const double radicand =
                  std::max(base_rad - 2.0 * sq_cross * c, 0.0);
              const double d12 = 0.5 * R * std::sqrt(radicand);

              f.r12 = d12;
              const double scaled = 2.0 * d12 / R;
              for (int p = 1; p <= kMaxR12Power; ++p) {
                f.r12p[p] = f.r12p[p - 1] * scaled;
              }

              const ElectronGeometry geom1 =
                  electron_geometry(xi1, eta1, phi, R);
              const Vec3 diff = geom1.pos - geom2.pos;
              const Vec3 u12 = (1.0 / d12) * diff;

              for (int t = 0; t < nt; ++t) {
                const TermEval e = eval_term(
                    bs.terms[static_cast<std::size_t>(t)], bs, f, R);
                value[static_cast<std::size_t>(t)] = e.value;
                grad1[static_cast<std::size_t>(t)] =
                    e.dxi1 * geom1.grad_xi + e.deta1 * geom1.grad_eta +
                    e.dr12 * u12;
                grad2[static_cast<std::size_t>(t)] =
                    e.dxi2 * geom2.grad_xi + e.deta2 * geom2.grad_eta +
                    (-e.dr12) * u12;
              }

              for (std::size_t ch = 0; ch < n_ch; ++ch) {
                const Channel& channel = channels[ch];
                const std::size_t iu = static_cast<std::size_t>(channel.i);
                const std::size_t ju = static_cast<std::size_t>(channel.j);
                const double p = value[iu] * value[ju];
                if (channel.odd) {
                  const double kinetic =
                      0.5 * (dot(grad1[iu], grad1[ju]) +
                             dot(grad2[iu], grad2[ju]));
                  q_samples(s, col_s[ch]) = volume * p * d12;
                  q_samples(s, col_h[ch]) =
                      volume * (kinetic + v_nuclear * p) * d12;
                } else {
                  q_samples(s, col_h[ch]) = volume * p;
                }
              }
            }

            b_coeff.noalias() = tables.c_proj * q_samples;

            const int row = na * kEtaNodes + nb;
            const double inv_parity =
                1.0 / (tables.eta_sine[static_cast<std::size_t>(na)] *
                       tables.eta_sine[static_cast<std::size_t>(nb)]);
            for (int col = 0; col < n_cols; ++col) {
              for (int k = 0; k <= kMaxC; ++k) {
                b_grid(row, col * n_k + k) =
                    ((k & 1) ? inv_parity : 1.0) * b_coeff(k, col);
              }
            }
          }
        }

        // Degree monitor: the top c-coefficient must vanish numerically.
        double top = 0.0, all = 0.0;
        for (int col = 0; col < n_cols; ++col) {
          top = std::max(
              top, b_grid.col(col * n_k + kMaxC).cwiseAbs().maxCoeff());
          all = std::max(
              all, b_grid.col(col * n_k).cwiseAbs().maxCoeff());
        }
        if (top > 1e-7 * std::max(all, 1e-280)) degree_alarm = true;

        for (std::size_t ch = 0; ch < n_ch; ++ch) {
          const int i = channels[ch].i;
          const int j = channels[ch].j;
          for (int which = 0; which < 2; ++which) {
            const int col = which == 0 ? col_s[ch] : col_h[ch];
            if (col < 0) continue;
            double total = 0.0;
            for (int k = 0; k <= kMaxC; ++k) {
              total += b_grid.col(col * n_k + k)
                           .dot(w_k[static_cast<std::size_t>(k)]);
            }
            if (which == 0) {
              s_acc(i, j) += w_in * total;
            } else {
              h_acc(i, j) += w_in * total;
            }
          }
        }
      }

      const double pref = 2.0 * kPi * std::pow(0.5 * R, 6) * 2.0 * wxi2;
      s_parts[n2] = pref * s_acc;
      h_parts[n2] = pref * h_acc;
    }
  };

  const int workers = std::clamp(threads, 1, static_cast<int>(n_outer));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (degree_alarm) {
    throw std::runtime_error(
        "odd_parity_contributions: polynomial degree bound exceeded");
  }

  OddParityResult out;
  out.overlap = Eigen::MatrixXd::Zero(nt, nt);
  out.hamiltonian = Eigen::MatrixXd::Zero(nt, nt);
  for (std::size_t n2 = 0; n2 < n_outer; ++n2) {
    out.overlap += s_parts[n2];
    out.hamiltonian += h_parts[n2];
  }
  return out;
}

}  // namespace qadapt::ecdetail
