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

#include "qfddf/double_factorization.hpp"
#include "qfddf/lbfgs.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace qfddf {

struct CdfOptions {
  int max_epochs = 100000;
  double grad_tol = 1e-8;
  int patience = 1000;
  int lbfgs_memory = 10;
  std::uint64_t seed = 0;
  int random_restarts = 0;  ///< extra Stage-2 runs from perturbed generators
  double restart_scale = 0.1;
  bool one_step = false;    ///< optimize generators and cores jointly
  /// Z solver used inside Stage 1 and Stage 2; pseudoinverse for small
  /// active spaces, CG beyond.
  CoreSolver solver = CoreSolver::kPseudoinverse;
  bool auto_solver = true;
};

struct StageRecord {
  std::string stage;
  double objective = 0.0;
  double mad = 0.0;
};

struct CdfResult {
  std::vector<DFLayer> layers;      ///< best-seen Stage-2 parameters
  std::vector<StageRecord> stages;  ///< stage0, stage1, stage2
  std::vector<double> history;      ///< best Stage-2 objective per epoch
  int epochs = 0;
  bool converged = false;
  std::string stop_reason;
};

/// Stage 0: X-DF. Stage 1: analytical core refit on the X-DF leaves.
/// Stage 2: quasi-Newton over leaf generators with the cores refit at every
/// objective evaluation.
CdfResult cdf_two_step(const Tensor4& eri, int n_df, const CdfOptions& options = {});

/// Objective O(X) of Stage 2 with leaves U_t = anchor_t exp(X_t) and cores
/// refit analytically; the gradient is with respect to the packed generators.
double cdf_reduced_objective(std::span<const Matrix> anchors, const Vector& packed, const Tensor4& eri,
                             const CoreFitOptions& fit_options, Vector* gradient,
                             std::vector<Matrix>* leaves_out = nullptr, std::vector<Matrix>* cores_out = nullptr);

/// Objective O(X, Z) of the one-step variant; packed = [X_1..X_n, Z_1..Z_n]
/// with Z stored as its upper triangle including the diagonal.
double cdf_joint_objective(std::span<const Matrix> anchors, const Vector& packed, const Tensor4& eri,
                           Vector* gradient);

}  // namespace qfddf
