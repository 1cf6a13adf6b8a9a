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

#include "qfddf/linalg.hpp"

namespace qfddf {

/// exp(X) for real antisymmetric X together with its Frechet derivative.
///
/// X is diagonalized through the Hermitian matrix iX = V diag(mu) V^H, so
/// exp(X) = V diag(e^{-i mu}) V^H. The derivative in direction E is
/// V [(V^H E V) o Phi] V^H with Phi the divided differences of the
/// exponential, written in the stable form e^{-i(mu_a+mu_b)/2} sinc((mu_a-mu_b)/2).
class AntisymmetricExp {
 public:
  explicit AntisymmetricExp(const Matrix& generator);

  const Matrix& matrix() const { return exp_; }

  /// d exp(X)[E].
  Matrix directional_derivative(const Matrix& direction) const;

  /// Adjoint of the derivative: returns dF/dX_ab for F = <grad_u, exp(X)>,
  /// treating every entry of X as independent.
  Matrix pullback(const Matrix& grad_u) const;

 private:
  ComplexMatrix vectors_;
  ComplexMatrix divided_;
  Matrix exp_;
};

/// Convenience wrapper returning only exp(X).
Matrix expm_antisymmetric(const Matrix& generator);

/// Number of free parameters of an n x n antisymmetric matrix.
inline int antisymmetric_size(int n) { return n * (n - 1) / 2; }

/// Strict upper triangle, row by row.
Vector pack_antisymmetric(const Matrix& x);
Matrix unpack_antisymmetric(const Eigen::Ref<const Vector>& packed, int n);

/// Gradient with respect to the packed parameters given an unconstrained
/// matrix gradient G: entries (G - G^T)_ab for a < b.
Vector pack_antisymmetric_gradient(const Matrix& unconstrained);

}  // namespace qfddf
