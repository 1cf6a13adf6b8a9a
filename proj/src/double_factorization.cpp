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

#include "qfddf/double_factorization.hpp"

#include "qfddf/expm.hpp"
#include "qfddf/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace qfddf {

namespace {

/// B[(p,q),k] = U_pk U_qk.
Matrix pair_matrix(const Matrix& leaf) {
  const Eigen::Index n = leaf.rows();
  Matrix b(n * n, n);
  for (Eigen::Index p = 0; p < n; ++p)
    for (Eigen::Index q = 0; q < n; ++q) b.row(p * n + q) = leaf.row(p).cwiseProduct(leaf.row(q));
  return b;
}

Matrix layer_matrix(const Matrix& leaf, const Matrix& core) {
  const Matrix b = pair_matrix(leaf);
  return b * core * b.transpose();
}

void check_layers(std::span<const Matrix> leaves, std::span<const Matrix> cores, int n) {
  if (leaves.size() != cores.size()) throw std::invalid_argument("double factorization: leaf/core count mismatch");
  for (std::size_t t = 0; t < leaves.size(); ++t) {
    if (leaves[t].rows() != n || leaves[t].cols() != n || cores[t].rows() != n || cores[t].cols() != n) {
      throw std::invalid_argument("double factorization: layer shape mismatch");
    }
  }
}

/// Residual Delta = ERI - sum_t B_t Z_t B_t^T as an M^2 x M^2 matrix.
Matrix residual_matrix(std::span<const Matrix> leaves, std::span<const Matrix> cores, const Tensor4& eri) {
  Matrix delta = eri.as_matrix();
  for (std::size_t t = 0; t < leaves.size(); ++t) delta -= layer_matrix(leaves[t], cores[t]);
  return delta;
}

}  // namespace

OneBodyFactor decompose_one_body(const Matrix& kappa) {
  const FixedEigen eig = symmetric_eigen_fixed(kappa);
  return {eig.vectors, eig.values, eig.determinant_fixed};
}

std::vector<DFLayer> xdf_factorize(const Tensor4& eri, int n_df) {
  const int n = eri.dim();
  const int max_df = n * (n + 1) / 2;
  if (n_df < 1 || n_df > max_df) {
    throw std::invalid_argument("xdf_factorize: n_df must lie in [1, " + std::to_string(max_df) + "]");
  }
  const Matrix v = eri.as_matrix();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (v + v.transpose()));
  const Vector& lambda = solver.eigenvalues();
  std::vector<int> order(lambda.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return std::abs(lambda(a)) > std::abs(lambda(b)); });

  std::vector<DFLayer> layers;
  layers.reserve(n_df);
  for (int t = 0; t < n_df; ++t) {
    const int idx = order[t];
    Matrix w(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) w(p, q) = solver.eigenvectors()(p * n + q, idx);
    const FixedEigen inner = symmetric_eigen_fixed(0.5 * (w + w.transpose()));
    DFLayer layer;
    layer.leaf = inner.vectors;
    const Matrix core = lambda(idx) * inner.values * inner.values.transpose();
    layer.core = 0.5 * (core + core.transpose());
    layers.push_back(std::move(layer));
  }
  return layers;
}

Tensor4 reconstruct_eri(std::span<const DFLayer> layers, int n_orbitals) {
  Matrix sum = Matrix::Zero(n_orbitals * n_orbitals, n_orbitals * n_orbitals);
  for (const DFLayer& layer : layers) {
    if (layer.leaf.rows() != n_orbitals) throw std::invalid_argument("reconstruct_eri: layer shape mismatch");
    sum += layer_matrix(layer.leaf, layer.core);
  }
  return Tensor4::from_matrix(sum, n_orbitals);
}

DFDecomposition make_decomposition(const ActiveSpaceHamiltonian& ham, std::vector<DFLayer> layers) {
  DFDecomposition dec;
  dec.n_orbitals = ham.n_orbitals;
  dec.e_ext = ham.e_ext;
  dec.one_body = decompose_one_body(compute_kappa(ham.one_body, ham.eri));
  dec.layers = std::move(layers);
  return dec;
}

ActiveSpaceHamiltonian to_hamiltonian(const DFDecomposition& dec, int n_alpha, int n_beta) {
  ActiveSpaceHamiltonian ham;
  ham.n_orbitals = dec.n_orbitals;
  ham.e_ext = dec.e_ext;
  ham.eri = reconstruct_eri(dec.layers, dec.n_orbitals);
  const Matrix kappa =
      dec.one_body.leaf * dec.one_body.eigenvalues.asDiagonal() * dec.one_body.leaf.transpose();
  ham.one_body = one_body_from_kappa(kappa, ham.eri);
  ham.n_alpha = n_alpha;
  ham.n_beta = n_beta;
  return ham;
}

FactorizationDiagnostics factorization_diagnostics(const Tensor4& eri, std::span<const DFLayer> layers) {
  Matrix delta = eri.as_matrix();
  for (const DFLayer& layer : layers) delta -= layer_matrix(layer.leaf, layer.core);
  FactorizationDiagnostics out;
  out.objective = 0.5 * delta.squaredNorm();
  out.mad = delta.size() ? delta.cwiseAbs().maxCoeff() : 0.0;
  return out;
}

LeafObjective df_objective_gradient(std::span<const Matrix> leaves, std::span<const Matrix> cores,
                                    const Tensor4& eri) {
  const int n = eri.dim();
  check_layers(leaves, cores, n);
  const Matrix delta = residual_matrix(leaves, cores, eri);

  // The leaf derivative of every layer is invariant under the 8-fold
  // symmetry, so only the symmetric part of Delta contributes.
  const Tensor4 delta_sym = symmetrize_eri(Tensor4::from_matrix(delta, n));
  const auto ds = delta_sym.as_matrix();

  LeafObjective out;
  out.objective = 0.5 * delta.squaredNorm();
  out.grad_leaf.reserve(leaves.size());
  out.grad_core.reserve(leaves.size());
  for (std::size_t t = 0; t < leaves.size(); ++t) {
    const Matrix b = pair_matrix(leaves[t]);
    out.grad_core.push_back(-(b.transpose() * delta * b));
    const Matrix w = ds * b * cores[t];
    Matrix g = Matrix::Zero(n, n);
    for (int p = 0; p < n; ++p)
      for (int q = 0; q < n; ++q) g.row(p) += w.row(p * n + q).cwiseProduct(leaves[t].row(q));
    out.grad_leaf.push_back(-4.0 * g);
  }
  return out;
}

GeneratorObjective cdf_objective_gradient(const GeneratorParams& params, std::span<const Matrix> cores,
                                          const Tensor4& eri) {
  std::vector<AntisymmetricExp> exps;
  std::vector<Matrix> leaves;
  exps.reserve(params.generators.size());
  leaves.reserve(params.generators.size());
  for (const Matrix& x : params.generators) {
    exps.emplace_back(x);
    leaves.push_back(exps.back().matrix());
  }
  LeafObjective leaf = df_objective_gradient(leaves, cores, eri);
  GeneratorObjective out;
  out.objective = leaf.objective;
  out.grad_core = std::move(leaf.grad_core);
  for (std::size_t t = 0; t < exps.size(); ++t) {
    const Matrix g = exps[t].pullback(leaf.grad_leaf[t]);
    out.grad_generator.push_back(g - g.transpose());
  }
  return out;
}

std::vector<Matrix> core_metric_product(std::span<const Matrix> leaves, std::span<const Matrix> cores) {
  const std::size_t nt = leaves.size();
  std::vector<Matrix> out(nt);
  for (std::size_t t = 0; t < nt; ++t) {
    out[t] = Matrix::Zero(leaves[t].cols(), leaves[t].cols());
    for (std::size_t s = 0; s < nt; ++s) {
      const Matrix m = (leaves[t].transpose() * leaves[s]).array().square().matrix();
      out[t] += m * cores[s] * m.transpose();
    }
  }
  return out;
}

CoreFit fit_core_tensors(std::span<const Matrix> leaves, const Tensor4& eri, const CoreFitOptions& options) {
  const int n = eri.dim();
  const int nt = static_cast<int>(leaves.size());
  for (const Matrix& u : leaves)
    if (u.rows() != n || u.cols() != n) throw std::invalid_argument("fit_core_tensors: leaf shape mismatch");

  CoreFit fit;
  if (nt == 0) return fit;
  const Matrix v = eri.as_matrix();
  std::vector<Matrix> rhs(nt);
  for (int t = 0; t < nt; ++t) {
    const Matrix b = pair_matrix(leaves[t]);
    rhs[t] = b.transpose() * v * b;
  }
  double rhs_norm2 = 0.0;
  for (const Matrix& r : rhs) rhs_norm2 += r.squaredNorm();

  if (options.solver == CoreSolver::kPseudoinverse) {
    const int nn = n * n;
    Matrix a(nt * nn, nt * nn);
    for (int t = 0; t < nt; ++t)
      for (int s = 0; s < nt; ++s) {
        const Matrix m = (leaves[t].transpose() * leaves[s]).array().square().matrix();
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l)
            for (int kp = 0; kp < n; ++kp)
              for (int lp = 0; lp < n; ++lp) a(t * nn + k * n + l, s * nn + kp * n + lp) = m(k, kp) * m(l, lp);
      }
    Vector b(nt * nn);
    for (int t = 0; t < nt; ++t)
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) b(t * nn + k * n + l) = rhs[t](k, l);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(a);
    const Vector& w = solver.eigenvalues();
    const Matrix& q = solver.eigenvectors();
    Vector proj = q.transpose() * b;
    for (Eigen::Index i = 0; i < w.size(); ++i) proj(i) = w(i) > options.eigenvalue_cutoff ? proj(i) / w(i) : 0.0;
    const Vector z = q * proj;
    fit.cores.resize(nt);
    for (int t = 0; t < nt; ++t) {
      Matrix c(n, n);
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) c(k, l) = z(t * nn + k * n + l);
      fit.cores[t] = 0.5 * (c + c.transpose());
    }
    const Vector res = a * z - b;
    fit.relative_residual = rhs_norm2 > 0.0 ? res.norm() / std::sqrt(rhs_norm2) : 0.0;
    return fit;
  }

  auto dot = [](const std::vector<Matrix>& x, const std::vector<Matrix>& y) {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i].cwiseProduct(y[i]).sum();
    return s;
  };
  std::vector<Matrix> z(nt, Matrix::Zero(n, n));
  std::vector<Matrix> r = rhs;
  std::vector<Matrix> p = r;
  double rr = dot(r, r);
  const double target = options.cg_tolerance * std::sqrt(rhs_norm2);
  fit.converged = std::sqrt(rr) <= target;
  int it = 0;
  while (!fit.converged && it < options.cg_max_iterations) {
    const std::vector<Matrix> ap = core_metric_product(leaves, p);
    const double pap = dot(p, ap);
    if (pap <= 0.0) break;
    const double alpha = rr / pap;
    for (int t = 0; t < nt; ++t) {
      z[t] += alpha * p[t];
      r[t] -= alpha * ap[t];
    }
    const double rr_new = dot(r, r);
    ++it;
    if (std::sqrt(rr_new) <= target) {
      rr = rr_new;
      fit.converged = true;
      break;
    }
    const double beta = rr_new / rr;
    rr = rr_new;
    for (int t = 0; t < nt; ++t) p[t] = r[t] + beta * p[t];
  }
  fit.iterations = it;
  fit.relative_residual = rhs_norm2 > 0.0 ? std::sqrt(rr / rhs_norm2) : 0.0;
  fit.cores.resize(nt);
  for (int t = 0; t < nt; ++t) fit.cores[t] = 0.5 * (z[t] + z[t].transpose());
  return fit;
}

}  // namespace qfddf
