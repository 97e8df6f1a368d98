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

#include "qadapt/legendre.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qadapt {

namespace {

void check_lm(int m, int l_max) {
  if (m < 0 || l_max < m || l_max > 200) {
    throw std::invalid_argument("legendre: need 0 <= m <= l_max <= 200");
  }
}

// Shared three-term recursion (l-m+1) T_{l+1} = (2l+1) x T_l - (l+m) T_{l-1}
// from the seed pair (T_m, T_{m+1}).
std::vector<double> upward(int m, int l_max, double x, double seed0,
                           double seed1) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(l_max - m + 1));
  out.push_back(seed0);
  if (l_max == m) return out;
  out.push_back(seed1);
  for (int l = m + 1; l < l_max; ++l) {
    const double next = ((2.0 * l + 1.0) * x * out.back() -
                         (l + m) * out[out.size() - 2]) /
                        (l - m + 1.0);
    out.push_back(next);
  }
  return out;
}

double double_factorial_odd(int m) {  // (2m-1)!!
  double f = 1.0;
  for (int k = 3; k <= 2 * m - 1; k += 2) f *= k;
  return f;
}

// Continued fraction for the ratio Q_{l+1}^m / Q_l^m (Q is the minimal
// solution of the recursion in growing l), by modified Lentz. From
//   (l-m+2) r_{l+1} r_l = (2l+3) x r_l - (l+m+1)  [recursion at l+1]
// one gets r_l = a1/(b1 + a2/(b2 + ...)) with a1 = l+m+1,
// ak = -(l-m+k)(l+m+k) for k >= 2 and bk = (2(l+k)+1) x.
double q_ratio(int m, int l, double x) {
  const double tiny = 1e-290;
  double f = tiny, c = tiny, d = 0.0;
  for (int k = 1; k < 100000; ++k) {
    const double a = k == 1 ? static_cast<double>(l + m + 1)
                            : -static_cast<double>(l - m + k) *
                                  static_cast<double>(l + m + k);
    const double b = (2.0 * (l + k) + 1.0) * x;
    d = b + a * d;
    if (d == 0.0) d = tiny;
    c = b + a / c;
    if (c == 0.0) c = tiny;
    d = 1.0 / d;
    const double delta = c * d;
    f *= delta;
    if (std::abs(delta - 1.0) < 5e-16) return f;
  }
  throw std::runtime_error("prolate_qlm: continued fraction failed");
}

}  // namespace

std::vector<double> ferrers_plm(int m, int l_max, double x) {
  check_lm(m, l_max);
  if (!(x > -1.0 && x < 1.0)) {
    throw std::invalid_argument("ferrers_plm: need |x| < 1");
  }
  const double s = std::sqrt(1.0 - x * x);
  const double pmm = double_factorial_odd(m) * std::pow(s, m);
  const double pmm1 = (2.0 * m + 1.0) * x * pmm;
  return upward(m, l_max, x, pmm, pmm1);
}

std::vector<double> prolate_plm(int m, int l_max, double x) {
  check_lm(m, l_max);
  if (!(x > 1.0)) {
    throw std::invalid_argument("prolate_plm: need x > 1");
  }
  const double s = std::sqrt(x * x - 1.0);
  const double pmm = double_factorial_odd(m) * std::pow(s, m);
  const double pmm1 = (2.0 * m + 1.0) * x * pmm;
  return upward(m, l_max, x, pmm, pmm1);
}

std::vector<double> prolate_qlm(int m, int l_max, double x) {
  check_lm(m, l_max);
  if (!(x > 1.0)) {
    throw std::invalid_argument("prolate_qlm: need x > 1");
  }
  // Miller's backward recursion: seed the ratio Q_{L+1}/Q_L far above l_max
  // with the continued fraction, recurse down (the stable direction for the
  // minimal solution), then normalize through the Casoratian with the stable
  // P chain:
  //   P_{l+1}^m Q_l^m - P_l^m Q_{l+1}^m = (l+m)!/(l-m+1)!   (x-independent).
  const int l_start = l_max + 24;
  const double ratio = q_ratio(m, l_start, x);

  std::vector<double> chain(static_cast<std::size_t>(l_start - m + 2));
  chain[static_cast<std::size_t>(l_start - m + 1)] = ratio;
  chain[static_cast<std::size_t>(l_start - m)] = 1.0;
  for (int l = l_start; l > m; --l) {
    // (l-m) Q_l = (2l+1)... inverted: Q_{l-1} = ((2l+1) x Q_l - (l-m+1) Q_{l+1}) / (l+m)
    const std::size_t i = static_cast<std::size_t>(l - m);
    chain[i - 1] =
        ((2.0 * l + 1.0) * x * chain[i] - (l - m + 1.0) * chain[i + 1]) /
        (l + m);
    // Rescale to dodge overflow for small x (Q grows rapidly downward).
    if (std::abs(chain[i - 1]) > 1e280) {
      for (std::size_t j = i - 1; j < chain.size(); ++j) chain[j] *= 1e-280;
    }
  }

  // Normalize at l = m using the Casoratian.
  const std::vector<double> p = prolate_plm(m, m + 1, x);
  double casoratian = 1.0;  // (2m)!/1! at l = m
  for (int j = 2; j <= 2 * m; ++j) casoratian *= j;
  const double denom = p[1] * chain[0] - p[0] * chain[1];
  if (denom == 0.0 || !std::isfinite(denom)) {
    throw std::runtime_error("prolate_qlm: normalization failed");
  }
  const double scale = casoratian / denom;

  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(l_max - m + 1));
  for (int l = m; l <= l_max; ++l) {
    out.push_back(scale * chain[static_cast<std::size_t>(l - m)]);
  }
  return out;
}

double neumann_r12_inverse(double R, double xi1, double eta1, double xi2,
                           double eta2, double dphi, int l_max, int m_max) {
  if (xi1 == xi2) {
    throw std::invalid_argument(
        "neumann_r12_inverse: xi values must differ (xi_< < xi_>)");
  }
  const double xi_lt = std::min(xi1, xi2);
  const double xi_gt = std::max(xi1, xi2);

  double total = 0.0;
  for (int m = 0; m <= m_max; ++m) {
    const std::vector<double> p_lt = prolate_plm(m, l_max, xi_lt);
    const std::vector<double> q_gt = prolate_qlm(m, l_max, xi_gt);
    const std::vector<double> f1 = ferrers_plm(m, l_max, eta1);
    const std::vector<double> f2 = ferrers_plm(m, l_max, eta2);
    const double eps = m == 0 ? 1.0 : 2.0;
    const double cphi = std::cos(m * dphi);
    for (int l = m; l <= l_max; ++l) {
      double ratio = 1.0;  // (l-m)!/(l+m)!
      for (int j = l - m + 1; j <= l + m; ++j) ratio /= j;
      const std::size_t idx = static_cast<std::size_t>(l - m);
      total += eps * (2.0 * l + 1.0) * ratio * ratio * p_lt[idx] *
               q_gt[idx] * f1[idx] * f2[idx] * cphi;
    }
  }
  return 2.0 / R * total;
}

}  // namespace qadapt
