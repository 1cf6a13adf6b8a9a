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

#include <functional>
#include <string>
#include <vector>

namespace qfddf {

/// f(x) returning the value and writing the gradient into `grad`.
using GradientObjective = std::function<double(const Vector& x, Vector& grad)>;

struct LbfgsOptions {
  int memory = 10;
  int max_iterations = 100000;
  double grad_tol = 1e-8;  ///< on the infinity norm of the gradient
  int patience = 1000;     ///< iterations without improvement of the best value
  double min_relative_improvement = 1e-14;
  double c1 = 1e-4;
  double c2 = 0.9;
  int max_line_search = 40;
};

struct LbfgsResult {
  Vector x;  ///< best point seen
  double value = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
  std::string stop_reason;
  std::vector<double> history;  ///< best value after each iteration
};

/// Limited-memory BFGS with a strong-Wolfe line search.
LbfgsResult minimize_lbfgs(const GradientObjective& objective, Vector x0, const LbfgsOptions& options = {});

}  // namespace qfddf
