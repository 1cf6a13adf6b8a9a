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

#pragma once

#include "qfddf/hamiltonian.hpp"

#include <optional>
#include <span>
#include <vector>

namespace qfddf {

/// One term of the factorized two-electron operator:
/// (pq|rs)_t = sum_kl leaf_pk leaf_qk core_kl leaf_rl leaf_sl.
struct DFLayer {
  Matrix leaf;  ///< special orthogonal
  Matrix core;  ///< symmetric
};

/// kappa = leaf diag(eigenvalues) leaf^T.
struct OneBodyFactor {
  Matrix leaf;
  Vector eigenvalues;
  bool determinant_fixed = false;
};

struct DFDecomposition {
  int n_orbitals = 0;
  double e_ext = 0.0;
  OneBodyFactor one_body;
  std::vector<DFLayer> layers;

  int n_df() const { return static_cast<int>(layers.size()); }
};

/// Antisymmetric generators, one per layer; leaf_t = exp(generator_t).
struct GeneratorParams {
  std::vector<Matrix> generators;
};

OneBodyFactor decompose_one_body(const Matrix& kappa);

/// Explicit (nested eigendecomposition) double factorization keeping the
/// n_df density-fitting vectors of largest |eigenvalue|.
std::vector<DFLayer> xdf_factorize(const Tensor4& eri, int n_df);

Tensor4 reconstruct_eri(std::span<const DFLayer> layers, int n_orbitals);

/// Builds the decomposition of a full Hamiltonian from a set of ERI layers.
DFDecomposition make_decomposition(const ActiveSpaceHamiltonian& ham, std::vector<DFLayer> layers);

/// The Hamiltonian represented by a decomposition, with ordinary one-body
/// integrals recovered from kappa and the reconstructed ERIs.
ActiveSpaceHamiltonian to_hamiltonian(const DFDecomposition& dec, int n_alpha, int n_beta);

struct FactorizationDiagnostics {
  double objective = 0.0;  ///< 1/2 ||Delta||_F^2
  double mad = 0.0;        ///< max |Delta_pqrs|
};

FactorizationDiagnostics factorization_diagnostics(const Tensor4& eri, std::span<const DFLayer> layers);

/// Least-squares objective and gradients with respect to leaves and cores.
struct LeafObjective {
  double objective = 0.0;
  std::vector<Matrix> grad_leaf;
  std::vector<Matrix> grad_core;
};

LeafObjective df_objective_gradient(std::span<const Matrix> leaves, std::span<const Matrix> cores,
                                    const Tensor4& eri);

/// Objective and gradients with leaves parametrized as exp(generator).
/// grad_generator holds the derivative with respect to each free entry
/// X_ab (a < b, with X_ba = -X_ab) stored antisymmetrically.
struct GeneratorObjective {
  double objective = 0.0;
  std::vector<Matrix> grad_generator;
  std::vector<Matrix> grad_core;
};

GeneratorObjective cdf_objective_gradient(const GeneratorParams& params, std::span<const Matrix> cores,
                                          const Tensor4& eri);

enum class CoreSolver { kPseudoinverse, kConjugateGradient };

struct CoreFitOptions {
  CoreSolver solver = CoreSolver::kPseudoinverse;
  double eigenvalue_cutoff = 1e-10;
  int cg_max_iterations = 500;
  double cg_tolerance = 1e-10;
};

struct CoreFit {
  std::vector<Matrix> cores;
  bool converged = true;
  int iterations = 0;
  double relative_residual = 0.0;
};

/// Optimal cores for fixed leaves: solves sum_t' M^tt' Z_t' M^tt'^T = R_t with
/// M^tt' = (U_t^T U_t') squared element-wise and R_t = B_t^T (pq|rs) B_t.
CoreFit fit_core_tensors(std::span<const Matrix> leaves, const Tensor4& eri, const CoreFitOptions& options = {});

/// sigma_t = sum_t' M^tt' b_t' M^tt'^T, the matrix-free product used by CG.
std::vector<Matrix> core_metric_product(std::span<const Matrix> leaves, std::span<const Matrix> cores);

}  // namespace qfddf
