// Copyright 2026 The qfddf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qfddf/lbfgs.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>

namespace qfddf {

namespace {

struct Point {
  double alpha = 0.0;
  double f = 0.0;
  double slope = 0.0;
  Vector x;
  Vector g;
};

class LineSearch {
 public:
  LineSearch(const GradientObjective& objective, const LbfgsOptions& options, int& evaluations)
      : objective_(objective), options_(options), evaluations_(evaluations) {}

  /// Returns true with `out` set on success; `out` holds the best decreasing
  /// point seen otherwise (alpha == 0 when none).
  bool run(const Vector& x0, double f0, const Vector& d, double slope0, double alpha_init, Point& out) {
    x0_ = &x0;
    d_ = &d;
    f0_ = f0;
    slope0_ = slope0;
    best_ = Point{};
    best_.f = f0;

    Point prev{0.0, f0, slope0, x0, Vector()};
    double alpha = alpha_init;
    for (int i = 0; i < options_.max_line_search; ++i) {
      Point cur = evaluate(alpha);
      if (!std::isfinite(cur.f) || cur.f > f0 + options_.c1 * alpha * slope0 || (i > 0 && cur.f >= prev.f)) {
        return zoom(prev, cur, out);
      }
      if (std::abs(cur.slope) <= -options_.c2 * slope0) {
        out = std::move(cur);
        return true;
      }
      if (cur.slope >= 0.0) return zoom(cur, prev, out);
      prev = std::move(cur);
      alpha *= 2.0;
    }
    out = best_;
    return false;
  }

 private:
  Point evaluate(double alpha) {
    Point p;
    p.alpha = alpha;
    p.x = *x0_ + alpha * *d_;
    p.g.resize(p.x.size());
    p.f = objective_(p.x, p.g);
    ++evaluations_;
    p.slope = p.g.dot(*d_);
    if (std::isfinite(p.f) && p.f < best_.f && p.f <= f0_ + options_.c1 * alpha * slope0_) best_ = p;
    return p;
  }

  bool zoom(Point lo, Point hi, Point& out) {
    for (int i = 0; i < options_.max_line_search; ++i) {
      const double a = lo.alpha, b = hi.alpha;
      double trial;
      // Minimizer of the quadratic through (lo.f, lo.slope) and hi.f.
      const double da = b - a;
      const double denom = 2.0 * (hi.f - lo.f - lo.slope * da);
      if (std::isfinite(hi.f) && denom > 0.0) {
        trial = a - lo.slope * da * da / denom;
      } else {
        trial = 0.5 * (a + b);
      }
      const double lo_b = std::min(a, b), hi_b = std::max(a, b);
      const double margin = 0.1 * (hi_b - lo_b);
      if (!std::isfinite(trial) || trial < lo_b + margin || trial > hi_b - margin) trial = 0.5 * (a + b);
      if (hi_b - lo_b < 1e-16 * std::max(1.0, hi_b)) break;

      Point cur = evaluate(trial);
      if (!std::isfinite(cur.f) || cur.f > f0_ + options_.c1 * trial * slope0_ || cur.f >= lo.f) {
        hi = std::move(cur);
      } else {
        if (std::abs(cur.slope) <= -options_.c2 * slope0_) {
          out = std::move(cur);
          return true;
        }
        if (cur.slope * (hi.alpha - lo.alpha) >= 0.0) hi = lo;
        lo = std::move(cur);
      }
    }
    out = best_;
    return false;
  }

  const GradientObjective& objective_;
  const LbfgsOptions& options_;
  int& evaluations_;
  const Vector* x0_ = nullptr;
  const Vector* d_ = nullptr;
  double f0_ = 0.0;
  double slope0_ = 0.0;
  Point best_;
};

}  // namespace

LbfgsResult minimize_lbfgs(const GradientObjective& objective, Vector x0, const LbfgsOptions& options) {
  LbfgsResult result;
  Vector x = std::move(x0);
  Vector g(x.size());
  double f = objective(x, g);
  result.evaluations = 1;
  result.x = x;
  result.value = f;
  result.grad_norm = g.size() ? g.cwiseAbs().maxCoeff() : 0.0;

  if (result.grad_norm <= options.grad_tol) {
    result.converged = true;
    result.stop_reason = "gradient tolerance";
    return result;
  }

  std::deque<Vector> s_hist, y_hist;
  std::deque<double> rho_hist;
  int since_improvement = 0;
  bool restarted = false;
  LineSearch search(objective, options, result.evaluations);

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    // Two-loop recursion.
    Vector q = g;
    std::vector<double> alphas(s_hist.size());
    for (int i = static_cast<int>(s_hist.size()) - 1; i >= 0; --i) {
      alphas[i] = rho_hist[i] * s_hist[i].dot(q);
      q -= alphas[i] * y_hist[i];
    }
    if (!s_hist.empty()) q *= s_hist.back().dot(y_hist.back()) / y_hist.back().squaredNorm();
    for (std::size_t i = 0; i < s_hist.size(); ++i) {
      const double beta = rho_hist[i] * y_hist[i].dot(q);
      q += s_hist[i] * (alphas[i] - beta);
    }
    Vector d = -q;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {
      s_hist.clear();
      y_hist.clear();
      rho_hist.clear();
      d = -g;
      slope = -g.squaredNorm();
    }
    const double alpha_init = s_hist.empty() ? std::min(1.0, 1.0 / std::max(g.norm(), 1e-300)) : 1.0;

    Point next;
    const bool ok = search.run(x, f, d, slope, alpha_init, next);
    if (!ok && next.alpha == 0.0) {
      if (!restarted && !s_hist.empty()) {
        s_hist.clear();
        y_hist.clear();
        rho_hist.clear();
        restarted = true;
        continue;
      }
      result.stop_reason = "line search failed";
      break;
    }
    restarted = false;

    const Vector s = next.x - x;
    const Vector y = next.g - g;
    const double sy = s.dot(y);
    if (sy > 1e-12 * s.norm() * y.norm()) {
      s_hist.push_back(s);
      y_hist.push_back(y);
      rho_hist.push_back(1.0 / sy);
      if (static_cast<int>(s_hist.size()) > options.memory) {
        s_hist.pop_front();
        y_hist.pop_front();
        rho_hist.pop_front();
      }
    }
    x = std::move(next.x);
    g = std::move(next.g);
    f = next.f;
    result.iterations = iter + 1;

    const double gnorm = g.cwiseAbs().maxCoeff();
    if (f < result.value - options.min_relative_improvement * std::abs(result.value)) {
      since_improvement = 0;
    } else {
      ++since_improvement;
    }
    if (f < result.value) {
      result.value = f;
      result.x = x;
      result.grad_norm = gnorm;
    }
    result.history.push_back(result.value);

    if (gnorm <= options.grad_tol) {
      result.converged = true;
      result.stop_reason = "gradient tolerance";
      break;
    }
    if (since_improvement >= options.patience) {
      result.stop_reason = "no improvement";
      break;
    }
  }
  if (result.stop_reason.empty()) result.stop_reason = "iteration limit";
  return result;
}

}  // namespace qfddf
