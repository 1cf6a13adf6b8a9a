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

#include <complex>

namespace qfddf {

using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Symmetric eigendecomposition with a reproducible gauge.
///
/// Eigenvalues ascend. Each eigenvector column is flipped so its
/// largest-magnitude entry is positive; if the resulting matrix has
/// determinant -1, the column belonging to the smallest-|eigenvalue| is
/// negated and `determinant_fixed` is set. A = V diag(w) V^T is unaffected.
struct FixedEigen {
  Vector values;
  Matrix vectors;
  bool determinant_fixed = false;
};

FixedEigen symmetric_eigen_fixed(const Matrix& a);

/// max |U^T U - I| and max |U U^T - I|.
double orthogonality_error(const Matrix& u);

bool is_special_orthogonal(const Matrix& u, double orth_tol = 1e-10, double det_tol = 1e-8);

/// Plane rotation on coordinates (i, j): identity except
/// [[cos, -sin], [sin, cos]] in rows/cols i, j.
Matrix plane_rotation(int n, int i, int j, double angle);

}  // namespace qfddf
