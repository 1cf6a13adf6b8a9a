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

#include "qfddf/cdf.hpp"

#include "qfddf/expm.hpp"

#include <random>
#include <stdexcept>

namespace qfddf {

namespace {

int symmetric_size(int n) { return n * (n + 1) / 2; }

Vector pack_symmetric(const Matrix& z) {
  const int n = static_cast<int>(z.rows());
  Vector out(symmetric_size(n));
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) out(k++) = z(a, b);
  return out;
}

Matrix unpack_symmetric(const Eigen::Ref<const Vector>& packed, int n) {
  Matrix z(n, n);
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) {
      z(a, b) = packed(k);
      z(b, a) = packed(k);
      ++k;
    }
  return z;
}

Vector pack_symmetric_gradient(const Matrix& g) {
  const int n = static_cast<int>(g.rows());
  Vector out(symmetric_size(n));
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a; b < n; ++b) out(k++) = a == b ? g(a, a) : g(a, b) + g(b, a);
  return out;
}

StageRecord record(const std::string& name, const Tensor4& eri, std::span<const DFLayer> layers) {
  const FactorizationDiagnostics d = factorization_diagnostics(eri, layers);
  return {name, d.objective, d.mad};
}

std::vector<DFLayer> zip_layers(const std::vector<Matrix>& leaves, const std::vector<Matrix>& cores) {
  std::vector<DFLayer> out(leaves.size());
  for (std::size_t t = 0; t < leaves.size(); ++t) out[t] = {leaves[t], cores[t]};
  return out;
}

}  // namespace

double cdf_reduced_objective(std::span<const Matrix> anchors, const Vector& packed, const Tensor4& eri,
                             const CoreFitOptions& fit_options, Vector* gradient, std::vector<Matrix>* leaves_out,
                             std::vector<Matrix>* cores_out) {
  const int n = eri.dim();
  const int na = antisymmetric_size(n);
  const std::size_t nt = anchors.size();
  if (packed.size() != static_cast<Eigen::Index>(nt * na)) throw std::invalid_argument("cdf: parameter size");

  std::vector<AntisymmetricExp> exps;
  std::vector<Matrix> leaves;
  exps.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    exps.emplace_back(unpack_antisymmetric(packed.segment(t * na, na), n));
    leaves.push_back(anchors[t] * exps.back().matrix());
  }
  const CoreFit fit = fit_core_tensors(leaves, eri, fit_options);
  const LeafObjective obj = df_objective_gradient(leaves, fit.cores, eri);
  if (gradient) {
    gradient->resize(packed.size());
    for (std::size_t t = 0; t < nt; ++t) {
      const Matrix g = exps[t].pullback(anchors[t].transpose() * obj.grad_leaf[t]);
      gradient->segment(t * na, na) = pack_antisymmetric_gradient(g);
    }
  }
  if (leaves_out) *leaves_out = std::move(leaves);
  if (cores_out) *cores_out = fit.cores;
  return obj.objective;
}

double cdf_joint_objective(std::span<const Matrix> anchors, const Vector& packed, const Tensor4& eri,
                           Vector* gradient) {
  const int n = eri.dim();
  const int na = antisymmetric_size(n);
  const int ns = symmetric_size(n);
  const std::size_t nt = anchors.size();
  if (packed.size() != static_cast<Eigen::Index>(nt * (na + ns))) throw std::invalid_argument("cdf: parameter size");

  std::vector<AntisymmetricExp> exps;
  std::vector<Matrix> leaves, cores;
  exps.reserve(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    exps.emplace_back(unpack_antisymmetric(packed.segment(t * na, na), n));
    leaves.push_back(anchors[t] * exps.back().matrix());
    cores.push_back(unpack_symmetric(packed.segment(nt * na + t * ns, ns), n));
  }
  const LeafObjective obj = df_objective_gradient(leaves, cores, eri);
  if (gradient) {
    gradient->resize(packed.size());
    for (std::size_t t = 0; t < nt; ++t) {
      const Matrix g = exps[t].pullback(anchors[t].transpose() * obj.grad_leaf[t]);
      gradient->segment(t * na, na) = pack_antisymmetric_gradient(g);
      gradient->segment(nt * na + t * ns, ns) = pack_symmetric_gradient(obj.grad_core[t]);
    }
  }
  return obj.objective;
}

CdfResult cdf_two_step(const Tensor4& eri, int n_df, const CdfOptions& options) {
  const int n = eri.dim();
  CdfResult result;

  const std::vector<DFLayer> stage0 = xdf_factorize(eri, n_df);
  result.stages.push_back(record("stage0", eri, stage0));

  CoreFitOptions fit_options;
  fit_options.solver = options.auto_solver ? (n <= 6 ? CoreSolver::kPseudoinverse : CoreSolver::kConjugateGradient)
                                           : options.solver;
  std::vector<Matrix> anchors;
  for (const DFLayer& layer : stage0) anchors.push_back(layer.leaf);
  const CoreFit fit1 = fit_core_tensors(anchors, eri, fit_options);
  std::vector<DFLayer> stage1 = zip_layers(anchors, fit1.cores);
  StageRecord rec1 = record("stage1", eri, stage1);
  if (rec1.objective > result.stages[0].objective) {
    stage1 = stage0;
    rec1 = record("stage1", eri, stage1);
  }
  result.stages.push_back(rec1);

  LbfgsOptions lopt;
  lopt.memory = options.lbfgs_memory;
  lopt.max_iterations = options.max_epochs;
  lopt.grad_tol = options.grad_tol;
  lopt.patience = options.patience;

  const int na = antisymmetric_size(n);
  const int ns = symmetric_size(n);
  std::vector<DFLayer> best = stage1;
  double best_value = rec1.objective;

  auto run_once = [&](const Vector& x0) {
    LbfgsResult lr;
    std::vector<DFLayer> layers;
    if (options.one_step) {
      Vector start(n_df * (na + ns));
      start.head(n_df * na) = x0;
      for (int t = 0; t < n_df; ++t) start.segment(n_df * na + t * ns, ns) = pack_symmetric(stage1[t].core);
      lr = minimize_lbfgs(
          [&](const Vector& x, Vector& g) { return cdf_joint_objective(anchors, x, eri, &g); }, start, lopt);
      for (int t = 0; t < n_df; ++t) {
        const Matrix leaf = anchors[t] * expm_antisymmetric(unpack_antisymmetric(lr.x.segment(t * na, na), n));
        layers.push_back({leaf, unpack_symmetric(lr.x.segment(n_df * na + t * ns, ns), n)});
      }
    } else {
      lr = minimize_lbfgs(
          [&](const Vector& x, Vector& g) { return cdf_reduced_objective(anchors, x, eri, fit_options, &g); }, x0,
          lopt);
      std::vector<Matrix> leaves, cores;
      cdf_reduced_objective(anchors, lr.x, eri, fit_options, nullptr, &leaves, &cores);
      layers = zip_layers(leaves, cores);
    }
    result.epochs += lr.iterations;
    for (double h : lr.history) result.history.push_back(std::min(h, best_value));
    const double value = factorization_diagnostics(eri, layers).objective;
    if (value <= best_value) {
      best_value = value;
      best = std::move(layers);
      result.converged = lr.converged;
      result.stop_reason = lr.stop_reason;
    } else if (result.stop_reason.empty()) {
      result.stop_reason = lr.stop_reason;
    }
  };

  run_once(Vector::Zero(n_df * na));
  if (options.random_restarts > 0) {
    std::mt19937_64 rng(options.seed);
    std::normal_distribution<double> normal(0.0, options.restart_scale);
    for (int r = 0; r < options.random_restarts; ++r) {
      Vector x0(n_df * na);
      for (Eigen::Index i = 0; i < x0.size(); ++i) x0(i) = normal(rng);
      // Restarts are anchored at the current best leaves.
      anchors.clear();
      for (const DFLayer& layer : best) anchors.push_back(layer.leaf);
      run_once(x0);
    }
  }

  result.layers = std::move(best);
  result.stages.push_back(record("stage2", eri, result.layers));
  return result;
}

}  // namespace qfddf
