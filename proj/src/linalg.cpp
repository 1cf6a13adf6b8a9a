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

#include "qfddf/linalg.hpp"

#include <cmath>
#include <stdexcept>

namespace qfddf {

FixedEigen symmetric_eigen_fixed(const Matrix& a) {
  if (a.rows() != a.cols()) throw std::invalid_argument("symmetric_eigen_fixed: matrix not square");
  const Eigen::Index n = a.rows();
  FixedEigen out;
  if (n == 0) {
    out.values = Vector();
    out.vectors = Matrix();
    return out;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(0.5 * (a + a.transpose()));
  out.values = solver.eigenvalues();
  out.vectors = solver.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::Index arg = 0;
    out.vectors.col(k).cwiseAbs().maxCoeff(&arg);
    if (out.vectors(arg, k) < 0.0) out.vectors.col(k) *= -1.0;
  }
  if (out.vectors.determinant() < 0.0) {
    Eigen::Index smallest = 0;
    out.values.cwiseAbs().minCoeff(&smallest);
    out.vectors.col(smallest) *= -1.0;
    out.determinant_fixed = true;
  }
  return out;
}

double orthogonality_error(const Matrix& u) {
  const Matrix id = Matrix::Identity(u.rows(), u.cols());
  return std::max((u.transpose() * u - id).cwiseAbs().maxCoeff(), (u * u.transpose() - id).cwiseAbs().maxCoeff());
}

bool is_special_orthogonal(const Matrix& u, double orth_tol, double det_tol) {
  if (u.rows() != u.cols()) return false;
  if (u.rows() == 0) return true;
  return orthogonality_error(u) < orth_tol && std::abs(u.determinant() - 1.0) < det_tol;
}

Matrix plane_rotation(int n, int i, int j, double angle) {
  Matrix r = Matrix::Identity(n, n);
  const double c = std::cos(angle), s = std::sin(angle);
  r(i, i) = c;
  r(j, j) = c;
  r(i, j) = -s;
  r(j, i) = s;
  return r;
}

}  // namespace qfddf
