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

#include <functional>
#include <vector>

namespace qadapt {

/// Deterministic objective returning the value and writing the gradient
/// (same length as x) into `grad`.
using ObjectiveFn =
    std::function<double(const std::vector<double>& x,
                         std::vector<double>& grad)>;

struct BfgsOutcome {
  std::vector<double> x;   // best iterate found
  double value = 0.0;      // objective at x
  int iterations = 0;
  long evaluations = 0;    // objective calls
  bool converged = false;  // max-abs gradient component reached tol
};

/// Quasi-Newton minimization with the inverse-Hessian BFGS update and a
/// strong-Wolfe line search (Armijo c1 = 1e-4, curvature c2 = 0.9).
/// Terminates when the max-abs gradient component drops to `tol` or after
/// 500 iterations; always returns the best iterate seen. A non-finite
/// objective value raises std::runtime_error naming the offending point.
BfgsOutcome bfgs_minimize(const ObjectiveFn& objective,
                          std::vector<double> x0, double tol);

}  // namespace qadapt
