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

#include "qfddf/expm.hpp"

#include <cmath>
#include <stdexcept>

namespace qfddf {

namespace {

double sinc(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
  }
  return std::sin(x) / x;
}

}  // namespace

AntisymmetricExp::AntisymmetricExp(const Matrix& generator) {
  if (generator.rows() != generator.cols()) throw std::invalid_argument("expm_antisymmetric: matrix not square");
  const Eigen::Index n = generator.rows();
  const double scale = std::max(1.0, generator.cwiseAbs().maxCoeff());
  if (n > 0 && (generator + generator.transpose()).cwiseAbs().maxCoeff() > 1e-13 * scale) {
    throw std::invalid_argument("expm_antisymmetric: generator is not antisymmetric");
  }
  if (n == 0) {
    exp_ = Matrix();
    return;
  }
  const std::complex<double> i(0.0, 1.0);
  const ComplexMatrix hermitian = i * generator.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(hermitian);
  const Vector mu = solver.eigenvalues();
  vectors_ = solver.eigenvectors();

  ComplexVector phases(n);
  for (Eigen::Index a = 0; a < n; ++a) phases(a) = std::exp(-i * mu(a));
  exp_ = (vectors_ * phases.asDiagonal() * vectors_.adjoint()).real();

  divided_.resize(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      divided_(a, b) = std::exp(-i * 0.5 * (mu(a) + mu(b))) * sinc(0.5 * (mu(a) - mu(b)));
    }
}

Matrix AntisymmetricExp::directional_derivative(const Matrix& direction) const {
  if (exp_.size() == 0) return Matrix();
  const ComplexMatrix rotated = vectors_.adjoint() * direction.cast<std::complex<double>>() * vectors_;
  const ComplexMatrix weighted = rotated.cwiseProduct(divided_);
  return (vectors_ * weighted * vectors_.adjoint()).real();
}

Matrix AntisymmetricExp::pullback(const Matrix& grad_u) const {
  if (exp_.size() == 0) return Matrix();
  const ComplexMatrix rotated = vectors_.adjoint() * grad_u.cast<std::complex<double>>() * vectors_;
  const ComplexMatrix weighted = rotated.cwiseProduct(divided_.conjugate());
  return (vectors_ * weighted * vectors_.adjoint()).real();
}

Matrix expm_antisymmetric(const Matrix& generator) { return AntisymmetricExp(generator).matrix(); }

Vector pack_antisymmetric(const Matrix& x) {
  const int n = static_cast<int>(x.rows());
  Vector out(antisymmetric_size(n));
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) out(k++) = x(a, b);
  return out;
}

Matrix unpack_antisymmetric(const Eigen::Ref<const Vector>& packed, int n) {
  if (packed.size() != antisymmetric_size(n)) throw std::invalid_argument("unpack_antisymmetric: size mismatch");
  Matrix x = Matrix::Zero(n, n);
  int k = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      x(a, b) = packed(k);
      x(b, a) = -packed(k);
      ++k;
    }
  return x;
}

Vector pack_antisymmetric_gradient(const Matrix& unconstrained) {
  return pack_antisymmetric(unconstrained - unconstrained.transpose());
}

}  // namespace qfddf
