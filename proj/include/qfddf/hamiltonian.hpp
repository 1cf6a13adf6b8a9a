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

#include <Eigen/Dense>

#include <array>
#include <cstddef>
#include <string>
#include <vector>

namespace qfddf {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using RowMajorMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Dense rank-4 tensor with equal extents, stored row-major as [p][q][r][s].
///
/// The (pq),(rs) unrolling used throughout the double-factorization code is
/// exposed through `as_matrix()`.
class Tensor4 {
 public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), data_(static_cast<std::size_t>(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }
  std::size_t size() const { return data_.size(); }

  double& operator()(int p, int q, int r, int s) { return data_[index(p, q, r, s)]; }
  double operator()(int p, int q, int r, int s) const { return data_[index(p, q, r, s)]; }

  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  Eigen::Map<RowMajorMatrix> as_matrix() { return {data_.data(), n_ * n_, n_ * n_}; }
  Eigen::Map<const RowMajorMatrix> as_matrix() const { return {data_.data(), n_ * n_, n_ * n_}; }

  static Tensor4 from_matrix(const Matrix& unrolled, int n);

  /// Sets (pq|rs) and every image under the 8-fold permutational symmetry.
  void set_symmetric(int p, int q, int r, int s, double value);

  double max_abs() const;

 private:
  std::size_t index(int p, int q, int r, int s) const {
    return ((static_cast<std::size_t>(p) * n_ + q) * n_ + r) * n_ + s;
  }

  int n_ = 0;
  std::vector<double> data_;
};

/// Spin-restricted active-space electronic Hamiltonian in chemists' notation.
///
/// `one_body` holds the ordinary one-electron integrals h_pq (any frozen-core
/// contributions already folded in), so that the operator is
///   E_ext + sum_pq h_pq a+_p a_q + 1/2 sum (pq|rs) a+_p a+_r a_s a_q
/// with spin sums implied.
struct ActiveSpaceHamiltonian {
  int n_orbitals = 0;
  double e_ext = 0.0;
  Matrix one_body;
  Tensor4 eri;
  int n_alpha = 0;
  int n_beta = 0;

  /// Throws std::invalid_argument when shapes, symmetry or particle counts are off.
  void validate(double tol = 1e-10) const;
};

/// Maximum violation per nontrivial image of the 8-fold ERI symmetry group.
struct SymmetryReport {
  static constexpr std::array<const char*, 7> kClassNames = {
      "qp|rs", "pq|sr", "qp|sr", "rs|pq", "sr|pq", "rs|qp", "sr|qp"};

  std::array<double, 7> max_violation{};

  double worst() const;
};

SymmetryReport validate_eri_symmetry(const Tensor4& eri);

/// Averages a tensor over the 8-fold symmetry group.
Tensor4 symmetrize_eri(const Tensor4& eri);

/// kappa_pq = h_pq - 1/2 sum_r (pr|qr).
Matrix compute_kappa(const Matrix& one_body, const Tensor4& eri);

/// Inverse of compute_kappa: h_pq = kappa_pq + 1/2 sum_r (pr|qr).
Matrix one_body_from_kappa(const Matrix& kappa, const Tensor4& eri);

/// Applies the orbital rotation C (new orbital k = sum_p C_pk old p) to both
/// the one-body matrix and the ERI tensor.
ActiveSpaceHamiltonian rotate_orbitals(const ActiveSpaceHamiltonian& ham, const Matrix& rotation);

}  // namespace qfddf
