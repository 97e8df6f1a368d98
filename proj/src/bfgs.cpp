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

#include "qadapt/bfgs.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

namespace qadapt {

namespace {

constexpr double kArmijoC1 = 1e-4;
constexpr double kCurvatureC2 = 0.9;
constexpr int kMaxIterations = 500;

using Vec = Eigen::VectorXd;

std::string format_point(const Vec& x) {
  std::ostringstream os;
  os << "[";
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    if (i) os << ", ";
    os << x(i);
  }
  os << "]";
  return os.str();
}

struct Evaluator {
  const ObjectiveFn& fn;
  long count = 0;

  double operator()(const Vec& x, Vec& grad) {
    std::vector<double> xv(x.data(), x.data() + x.size());
    std::vector<double> gv(xv.size(), 0.0);
    const double f = fn(xv, gv);
    ++count;
    bool finite = std::isfinite(f);
    for (double g : gv) finite = finite && std::isfinite(g);
    if (!finite) {
      throw std::runtime_error("bfgs_minimize: non-finite objective at " +
                               format_point(x));
    }
    grad = Eigen::Map<const Vec>(gv.data(),
                                 static_cast<Eigen::Index>(gv.size()));
    return f;
  }
};

struct LineSearchResult {
  double alpha = 0.0;
  double f = 0.0;
  Vec grad;
  bool ok = false;
};

// Strong-Wolfe search along the descent direction p: bracket with step
// doubling, then zoom by quadratic interpolation with a bisection safeguard.
LineSearchResult wolfe_search(Evaluator& eval, const Vec& x, const Vec& p,
                              double f0, const Vec& g0) {
  const double d0 = g0.dot(p);
  LineSearchResult out;
  if (d0 >= 0.0) return out;

  Vec g_trial;
  auto phi = [&](double a, double& d) {
    const Vec xt = x + a * p;
    const double f = eval(xt, g_trial);
    d = g_trial.dot(p);
    return f;
  };

  auto zoom = [&](double lo, double f_lo, double d_lo, double hi,
                  double f_hi) {
    for (int it = 0; it < 60; ++it) {
      const double left = std::min(lo, hi);
      const double right = std::max(lo, hi);
      const double span = right - left;
      if (span < 1e-16 * std::max(1.0, std::abs(lo))) break;

      // Minimizer of the quadratic through (lo, f_lo, d_lo) and (hi, f_hi).
      const double h = hi - lo;
      const double denom = f_hi - f_lo - d_lo * h;
      double a = denom != 0.0 ? lo - 0.5 * d_lo * h * h / denom
                              : 0.5 * (lo + hi);
      if (!(a > left + 0.1 * span && a < right - 0.1 * span) ||
          !std::isfinite(a)) {
        a = 0.5 * (lo + hi);
      }

      double d;
      const double f = phi(a, d);
      if (f > f0 + kArmijoC1 * a * d0 || f >= f_lo) {
        hi = a;
        f_hi = f;
      } else {
        if (std::abs(d) <= -kCurvatureC2 * d0) {
          out = {a, f, g_trial, true};
          return;
        }
        if (d * (hi - lo) >= 0.0) {
          hi = lo;
          f_hi = f_lo;
        }
        lo = a;
        f_lo = f;
        d_lo = d;
      }
    }
    // Interval collapsed. Accept the low point if it at least improves.
    if (lo > 0.0 && f_lo <= f0 + kArmijoC1 * lo * d0) {
      double d;
      const double f = phi(lo, d);
      out = {lo, f, g_trial, true};
    }
  };

  double a_prev = 0.0, f_prev = f0, d_prev = d0;
  double a = 1.0;
  for (int it = 0; it < 20; ++it) {
    double d;
    const double f = phi(a, d);
    if (f > f0 + kArmijoC1 * a * d0 || (it > 0 && f >= f_prev)) {
      zoom(a_prev, f_prev, d_prev, a, f);
      return out;
    }
    if (std::abs(d) <= -kCurvatureC2 * d0) {
      out = {a, f, g_trial, true};
      return out;
    }
    if (d >= 0.0) {
      zoom(a, f, d, a_prev, f_prev);
      return out;
    }
    a_prev = a;
    f_prev = f;
    d_prev = d;
    a = std::min(2.0 * a, 1e8);
  }
  return out;
}

}  // namespace

BfgsOutcome bfgs_minimize(const ObjectiveFn& objective, std::vector<double> x0,
                          double tol) {
  Evaluator eval{objective};
  const Eigen::Index dim = static_cast<Eigen::Index>(x0.size());
  Vec x = Eigen::Map<const Vec>(x0.data(), dim);
  Vec g(dim);
  double f = eval(x, g);

  BfgsOutcome best;
  best.x = x0;
  best.value = f;

  auto track_best = [&](const Vec& xx, double ff) {
    if (ff < best.value) {
      best.value = ff;
      best.x.assign(xx.data(), xx.data() + xx.size());
    }
  };

  if (dim == 0) {
    best.converged = true;
    best.evaluations = eval.count;
    return best;
  }

  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(dim, dim);
  bool scaled = false;
  bool identity = true;

  int it = 0;
  for (; it < kMaxIterations; ++it) {
    if (g.cwiseAbs().maxCoeff() <= tol) {
      best.converged = true;
      break;
    }
    Vec p = -(hinv * g);
    if (g.dot(p) >= 0.0) {
      hinv.setIdentity();
      scaled = false;
      identity = true;
      p = -g;
    }
    LineSearchResult ls = wolfe_search(eval, x, p, f, g);
    if (!ls.ok && !identity) {
      // Curvature information went stale; retry as steepest descent.
      hinv.setIdentity();
      scaled = false;
      identity = true;
      p = -g;
      ls = wolfe_search(eval, x, p, f, g);
    }
    if (!ls.ok) break;  // stuck: return the best point found

    const Vec s = ls.alpha * p;
    const Vec y = ls.grad - g;
    x += s;
    f = ls.f;
    g = ls.grad;
    track_best(x, f);

    const double sy = s.dot(y);
    const double yy = y.dot(y);
    if (sy > 1e-14 * s.norm() * y.norm() && yy > 0.0) {
      if (!scaled) {
        hinv *= sy / yy;
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Vec hy = hinv * y;
      const double yhy = y.dot(hy);
      hinv.noalias() -= rho * (hy * s.transpose() + s * hy.transpose());
      hinv.noalias() += (rho * rho * yhy + rho) * (s * s.transpose());
      identity = false;
    }
  }

  best.iterations = it;
  best.evaluations = eval.count;
  return best;
}

}  // namespace qadapt
