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

#include <vector>

namespace qadapt {

/// Ferrers functions P_l^m on (-1, 1) without the Condon-Shortley phase:
/// P_m^m(x) = (2m-1)!! (1-x^2)^{m/2}, upward recursion in l.
/// Returns P_l^m for l = m..l_max.
std::vector<double> ferrers_plm(int m, int l_max, double x);

/// Legendre functions of the first kind on (1, inf), Hobson convention:
/// P_m^m(x) = (2m-1)!! (x^2-1)^{m/2}, upward recursion in l.
std::vector<double> prolate_plm(int m, int l_max, double x);

/// Second-kind functions Q_l^m on (1, inf) from the reduction-of-order
/// integral Q_l^m(x) = c_lm P_l^m(x) * integral over (x, inf) of
/// dt / ((t^2-1) P_l^m(t)^2), with c_lm = (l+m)!/(l-m)!. Stable for the
/// moderate l, m this project needs (no minimal-solution recursions).
std::vector<double> prolate_qlm(int m, int l_max, double x);

/// Two-center Coulomb kernel expansion (Neumann): evaluates the partial sum
///   1/r12 ~ (2/R) sum_{l<=l_max} sum_{m<=min(l,m_max)} eps_m (2l+1)
///           [(l-m)!/(l+m)!]^2 P_l^m(xi_<) Q_l^m(xi_>) P_l^m(eta1)
///           P_l^m(eta2) cos(m dphi)
/// with eps_0 = 1, eps_m = 2. Converges geometrically for xi_< < xi_>;
/// used as the kernel oracle and by the separable integral engine.
double neumann_r12_inverse(double R, double xi1, double eta1, double xi2,
                           double eta2, double dphi, int l_max, int m_max);

}  // namespace qadapt
