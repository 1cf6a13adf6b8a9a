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

#include "qfddf/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qfddf {

Tensor4 Tensor4::from_matrix(const Matrix& unrolled, int n) {
  if (unrolled.rows() != n * n || unrolled.cols() != n * n) {
    throw std::invalid_argument("Tensor4::from_matrix: shape mismatch");
  }
  Tensor4 out(n);
  out.as_matrix() = unrolled;
  return out;
}

void Tensor4::set_symmetric(int p, int q, int r, int s, double value) {
  (*this)(p, q, r, s) = value;
  (*this)(q, p, r, s) = value;
  (*this)(p, q, s, r) = value;
  (*this)(q, p, s, r) = value;
  (*this)(r, s, p, q) = value;
  (*this)(s, r, p, q) = value;
  (*this)(r, s, q, p) = value;
  (*this)(s, r, q, p) = value;
}

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

void ActiveSpaceHamiltonian::validate(double tol) const {
  const int n = n_orbitals;
  if (n < 0) throw std::invalid_argument("negative orbital count");
  if (one_body.rows() != n || one_body.cols() != n) {
    throw std::invalid_argument("one-body matrix has wrong shape");
  }
  if (eri.dim() != n) throw std::invalid_argument("ERI tensor has wrong extent");
  if (n_alpha < 0 || n_alpha > n || n_beta < 0 || n_beta > n) {
    throw std::invalid_argument("particle counts out of range");
  }
  if ((one_body - one_body.transpose()).cwiseAbs().maxCoeff() > tol) {
    throw std::invalid_argument("one-body integrals are not symmetric");
  }
  if (validate_eri_symmetry(eri).worst() > tol) {
    throw std::invalid_argument("ERI tensor violates 8-fold symmetry");
  }
}

double SymmetryReport::worst() const {
  return *std::max_element(max_violation.begin(), max_violation.end());
}

SymmetryReport validate_eri_symmetry(const Tensor4& eri) {
  SymmetryReport report;
  const int n = eri.dim();
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          const double v = eri(p, q, r, s);
          const std::array<double, 7> images = {eri(q, p, r, s), eri(p, q, s, r), eri(q, p, s, r),
                                                eri(r, s, p, q), eri(s, r, p, q), eri(r, s, q, p),
                                                eri(s, r, q, p)};
          for (std::size_t c = 0; c < images.size(); ++c) {
            report.max_violation[c] = std::max(report.max_violation[c], std::abs(v - images[c]));
          }
        }
  return report;
}

Tensor4 symmetrize_eri(const Tensor4& eri) {
  const int n = eri.dim();
  Tensor4 out(n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r)
        for (int s = 0; s < n; ++s) {
          out(p, q, r, s) = (eri(p, q, r, s) + eri(q, p, r, s) + eri(p, q, s, r) + eri(q, p, s, r) +
                             eri(r, s, p, q) + eri(s, r, p, q) + eri(r, s, q, p) + eri(s, r, q, p)) /
                            8.0;
        }
  return out;
}

namespace {

Matrix exchange_contraction(const Tensor4& eri) {
  const int n = eri.dim();
  Matrix k = Matrix::Zero(n, n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int r = 0; r < n; ++r) k(p, q) += eri(p, r, q, r);
  return k;
}

}  // namespace

Matrix compute_kappa(const Matrix& one_body, const Tensor4& eri) {
  return one_body - 0.5 * exchange_contraction(eri);
}

Matrix one_body_from_kappa(const Matrix& kappa, const Tensor4& eri) {
  return kappa + 0.5 * exchange_contraction(eri);
}

ActiveSpaceHamiltonian rotate_orbitals(const ActiveSpaceHamiltonian& ham, const Matrix& rotation) {
  const int n = ham.n_orbitals;
  ActiveSpaceHamiltonian out = ham;
  out.one_body = rotation.transpose() * ham.one_body * rotation;
  // (pq|rs) -> sum C_pa C_qb (pq|rs) C_rc C_sd, done as two unrolled products.
  Matrix pair(n * n, n * n);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) pair(p * n + q, a * n + b) = rotation(p, a) * rotation(q, b);
  const Matrix rotated = pair.transpose() * Matrix(ham.eri.as_matrix()) * pair;
  out.eri = Tensor4::from_matrix(rotated, n);
  return out;
}

}  // namespace qfddf
